use super::alt::AltSet;
use super::order::PartialOrder;
use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_m`].
pub const MAX_M_ENV: &str = "POVOTE_MAX_M";

/// Canonical keys pack `m(m-1)` bits into a `u64`.
const HARD_MAX_M: usize = 8;

/// Bounds on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe [`enumerate_partial_orders`] will enumerate.
    pub max_m: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_m: 5 }
    }
}

impl Limits {
    /// Defaults, with `POVOTE_MAX_M` applied when it parses.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(m) = std::env::var(MAX_M_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_m = m;
        }
        limits
    }

    pub fn check_m(&self, m: usize) -> Result<()> {
        let limit = self.max_m.min(HARD_MAX_M);
        if m > limit {
            return Err(Error::Resource {
                what: "universe size",
                requested: m as u64,
                limit: limit as u64,
            });
        }
        Ok(())
    }
}

/// All strict partial orders on `m` labeled alternatives, sorted by
/// [`PartialOrder::canonical_key`], under the limits from the environment.
pub fn enumerate_partial_orders(m: usize) -> Result<Vec<PartialOrder>> {
    enumerate_with(m, &Limits::from_env())
}

pub fn enumerate_with(m: usize, limits: &Limits) -> Result<Vec<PartialOrder>> {
    if m == 0 {
        return Err(Error::Config(
            "a universe needs at least one alternative".into(),
        ));
    }
    limits.check_m(m)?;

    // Grow orders one alternative at a time. The new alternative k is placed
    // below an up-closed set `up` and above a down-closed set `down`, with
    // every member of `up` already above every member of `down`.
    let mut layer: Vec<Vec<u32>> = vec![vec![0]];
    for k in 1..m {
        let mut next = Vec::new();
        for rows in &layer {
            let above_of = |x: usize| {
                (0..k)
                    .filter(|&y| rows[y] & (1 << x) != 0)
                    .fold(0u32, |acc, y| acc | (1 << y))
            };
            for down in 0u32..(1 << k) {
                if !AltSet(down).iter().all(|d| rows[d.index()] & !down == 0) {
                    continue;
                }
                for up in 0u32..(1 << k) {
                    if up & down != 0 {
                        continue;
                    }
                    let closed_up = AltSet(up).iter().all(|u| above_of(u.index()) & !up == 0);
                    let spans = AltSet(up).iter().all(|u| down & !rows[u.index()] == 0);
                    if !closed_up || !spans {
                        continue;
                    }
                    let mut grown = rows.clone();
                    for u in AltSet(up).iter() {
                        grown[u.index()] |= 1 << k;
                    }
                    grown.push(down);
                    next.push(grown);
                }
            }
        }
        layer = next;
    }

    let mut orders: Vec<PartialOrder> = layer
        .iter()
        .map(|rows| PartialOrder::from_closed_rows(m, rows))
        .collect();
    orders.sort_by_key(|po| po.canonical_key());
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let limits = Limits::default();
        assert_eq!(enumerate_with(1, &limits).unwrap().len(), 1);
        assert_eq!(enumerate_with(2, &limits).unwrap().len(), 3);
        assert_eq!(enumerate_with(3, &limits).unwrap().len(), 19);
    }

    #[test]
    fn canonical_order_starts_with_empty_relation() {
        let orders = enumerate_with(3, &Limits::default()).unwrap();
        assert_eq!(orders[0], PartialOrder::empty(3).unwrap());
        assert!(orders
            .windows(2)
            .all(|w| w[0].canonical_key() < w[1].canonical_key()));
    }

    #[test]
    fn limit_is_enforced() {
        let limits = Limits { max_m: 3 };
        assert!(matches!(
            enumerate_with(4, &limits),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            enumerate_with(9, &Limits { max_m: 20 }),
            Err(Error::Resource { limit: 8, .. })
        ));
    }
}
