use super::Metric;
use crate::error::Result;
use crate::objects::StringObj;

/// Unit-cost edit distance (insert, delete, substitute) over Unicode scalar values.
pub fn levenshtein(s: &StringObj, t: &StringObj) -> usize {
    let (a, b) = (s.chars(), t.chars());
    // keep the shorter string as the row
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (i, &cl) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &cs) in short.iter().enumerate() {
            let above = row[j + 1];
            row[j + 1] = (above + 1)
                .min(row[j] + 1)
                .min(diag + usize::from(cl != cs));
            diag = above;
        }
    }
    row[short.len()]
}

#[derive(Clone, Copy, Debug)]
pub struct Levenshtein;

impl Metric<StringObj> for Levenshtein {
    fn eval(&self, a: &StringObj, b: &StringObj) -> Result<f64> {
        Ok(levenshtein(a, b) as f64)
    }

    fn name(&self) -> String {
        "levenshtein".into()
    }
}
