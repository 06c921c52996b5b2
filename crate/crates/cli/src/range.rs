use std::str::FromStr;

use rpf_core::Error;

/// Inclusive range of nonnegative arguments: `7`, `0..10`, or powers like `10^6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    start: u64,
    end: u64,
}

impl NRange {
    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }
}

fn parse_bound(s: &str) -> Result<u64, Error> {
    let s = s.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("argument {s:?}: {e}"));
    match s.split_once('^') {
        Some((base, exp)) => {
            let base: u64 = base.trim().parse().map_err(|e| bad(&e))?;
            let exp: u32 = exp.trim().parse().map_err(|e| bad(&e))?;
            base.checked_pow(exp).ok_or_else(|| bad(&"overflows u64"))
        }
        None => s.parse().map_err(|e| bad(&e)),
    }
}

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse_bound(a)?, parse_bound(b)?),
            None => {
                let n = parse_bound(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(Error::InvalidInput(format!("empty range {s:?}")));
        }
        Ok(NRange { start, end })
    }
}
