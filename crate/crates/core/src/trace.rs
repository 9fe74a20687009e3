//! Gale values along a word, exported as CSV.

use std::io;

use dashu_ratio::RBig;

use crate::bits::BitWord;
use crate::error::Result;
use crate::gale::{Cursor, GaleRule};
use crate::interval::Log2Value;

/// Scale of the logged values; the CSV shows six decimals of the midpoint.
pub const TRACE_LOG_BITS: usize = 32;

pub const TRACE_HEADER: [&str; 5] = ["n", "bit", "value_num", "value_den", "log2_value"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub n: usize,
    /// The last bit of the length-`n` prefix; `None` at `n = 0`.
    pub bit: Option<bool>,
    pub value: RBig,
    pub log2_value: Log2Value,
}

/// One row per prefix length `0..=|w|`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaleValueTrace {
    pub label: String,
    pub rows: Vec<TraceRow>,
}

impl GaleValueTrace {
    pub fn along(d: &dyn GaleRule, w: &BitWord) -> Result<Self> {
        let mut c = Cursor::new(d)?;
        let mut rows = Vec::with_capacity(w.len() + 1);
        rows.push(row(0, None, c.value())?);
        for (i, b) in w.iter().enumerate() {
            c.push(b)?;
            rows.push(row(i + 1, Some(b), c.value())?);
        }
        Ok(GaleValueTrace { label: d.label(), rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.bit.map_or(String::new(), |b| u8::from(b).to_string()),
                r.value.numerator().to_string(),
                r.value.denominator().to_string(),
                r.log2_value.to_decimal(6),
            ])?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn row(n: usize, bit: Option<bool>, v: &RBig) -> Result<TraceRow> {
    Ok(TraceRow { n, bit, value: v.clone(), log2_value: Log2Value::of(v, TRACE_LOG_BITS)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SExponent;
    use crate::zoo::{BlockAlphabet, BlockGale};

    #[test]
    fn block_gale_doubles_per_block() {
        let g = BlockGale::new(SExponent::martingale(), BlockAlphabet::parse(2, &["00", "11"]).unwrap());
        let t = GaleValueTrace::along(&g, &BitWord::repeat(false, 6)).unwrap();
        let logs: Vec<String> = t.rows.iter().map(|r| r.log2_value.to_decimal(0)).collect();
        assert_eq!(logs, ["0", "0", "1", "1", "2", "2", "3"]);
        let csv = t.to_csv_string();
        assert!(csv.starts_with("n,bit,value_num,value_den,log2_value\n0,,1,1,0.000000\n1,0,1,1,"));
    }

    #[test]
    fn zero_rows_print_neg_infinity() {
        let g = BlockGale::new(SExponent::martingale(), BlockAlphabet::parse(2, &["00"]).unwrap());
        let t = GaleValueTrace::along(&g, &"01".parse().unwrap()).unwrap();
        assert!(t.to_csv_string().ends_with("2,1,0,1,-inf\n"));
    }
}
