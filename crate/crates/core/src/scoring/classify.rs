use super::{Score, ScoringFunction};
use crate::error::{Error, Result};
use crate::par;
use crate::preference::{enumerate_partial_orders, AltSet, Alternative, PartialOrder, Permutation};

/// Scores of every enumerated order at a fixed `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringTable {
    pub m: usize,
    pub orders: Vec<PartialOrder>,
    pub rows: Vec<Vec<Score>>,
}

fn check_arity(s: &dyn ScoringFunction, m: usize) -> Result<()> {
    match s.arity() {
        Some(expected) if expected != m => Err(Error::Arity { expected, found: m }),
        _ => Ok(()),
    }
}

/// Tabulates `s` over every partial order on `m` alternatives.
pub fn tabulate(s: &dyn ScoringFunction, m: usize) -> Result<ScoringTable> {
    check_arity(s, m)?;
    let orders = enumerate_partial_orders(m)?;
    let rows = par::map_indexed(orders.len(), true, |i| s.scores(&orders[i]));
    Ok(ScoringTable { m, orders, rows })
}

/// Whether `s_≻(a) = s_{σ(≻)}(σ(a))` for every order, permutation and
/// alternative at this `m`.
pub fn is_positional(s: &dyn ScoringFunction, m: usize) -> Result<bool> {
    check_arity(s, m)?;
    let orders = enumerate_partial_orders(m)?;
    let perms = Permutation::all(m);
    let ok = par::map_indexed(orders.len(), true, |i| {
        let po = &orders[i];
        perms.iter().all(|sigma| {
            let moved = po.relabel(sigma);
            (0..m).all(|a| {
                let a = Alternative(a as u8);
                s.score(po, a) == s.score(&moved, sigma.apply(a))
            })
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Membership in the plurality-side and anti-plurality-side rule classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassMembership {
    pub plurality_class: bool,
    pub simple_plurality: bool,
    pub monotonic_simple_plurality: bool,
    pub uniform_plurality: bool,
    pub anti_plurality_class: bool,
    pub simple_anti_plurality: bool,
    pub monotonic_simple_anti_plurality: bool,
    pub uniform_anti_plurality: bool,
}

impl ClassMembership {
    pub const FLAG_NAMES: [&'static str; 8] = [
        "plurality_class",
        "simple_plurality",
        "monotonic_simple_plurality",
        "uniform_plurality",
        "anti_plurality_class",
        "simple_anti_plurality",
        "monotonic_simple_anti_plurality",
        "uniform_anti_plurality",
    ];

    /// Flags in the fixed order of [`Self::FLAG_NAMES`].
    pub fn flags(&self) -> [(&'static str, bool); 8] {
        let values = [
            self.plurality_class,
            self.simple_plurality,
            self.monotonic_simple_plurality,
            self.uniform_plurality,
            self.anti_plurality_class,
            self.simple_anti_plurality,
            self.monotonic_simple_anti_plurality,
            self.uniform_anti_plurality,
        ];
        let mut out = [("", false); 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (Self::FLAG_NAMES[i], values[i]);
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct SideFlags {
    class: bool,
    simple: bool,
    monotonic: bool,
    uniform: bool,
}

// Shared test for one side. `favoured` picks T (or B) per order; `above`
// says whether favoured scores must sit above (plurality) or below
// (anti-plurality) the common score of the rest.
fn side_flags(
    table: &ScoringTable,
    favoured: impl Fn(&PartialOrder) -> AltSet,
    above: bool,
) -> SideFlags {
    let m = table.m;
    let mut class = true;
    let mut equal_within = true;
    // (|favoured set|, favoured score minus the common rest score)
    let mut normalized: Vec<(usize, Score)> = Vec::new();

    for (po, row) in table.orders.iter().zip(&table.rows) {
        let fav = favoured(po);
        let rest = fav.complement(m);
        let fav_scores: Vec<Score> = fav.iter().map(|a| row[a.index()]).collect();
        let all_equal = fav_scores.windows(2).all(|w| w[0] == w[1]);
        equal_within &= all_equal;

        // With no rest the order imposes no class constraint and has no
        // normalization, so it is left out of cross-order comparisons.
        let Some(first_rest) = rest.iter().next() else {
            continue;
        };
        let common = row[first_rest.index()];
        if rest.iter().any(|b| row[b.index()] != common) {
            class = false;
            continue;
        }
        let (weakly, strictly) = if above {
            (
                fav_scores.iter().all(|s| *s >= common),
                fav_scores.iter().any(|s| *s > common),
            )
        } else {
            (
                fav_scores.iter().all(|s| *s <= common),
                fav_scores.iter().any(|s| *s < common),
            )
        };
        class &= weakly && strictly;
        if all_equal {
            normalized.push((fav.len(), fav_scores[0] - common));
        }
    }

    let simple = class && equal_within;
    let monotonic = simple
        && normalized.iter().all(|(size_a, a)| {
            normalized.iter().all(|(size_b, b)| {
                if size_a > size_b {
                    return true;
                }
                // smaller favoured sets score at least as much on top,
                // at most as much at the bottom
                if above {
                    a >= b
                } else {
                    a <= b
                }
            })
        });
    let uniform = monotonic && normalized.windows(2).all(|w| w[0].1 == w[1].1);
    SideFlags {
        class,
        simple,
        monotonic,
        uniform,
    }
}

/// Decides class membership of the tabulated scoring function.
///
/// Each order's non-top (non-bottom) score is normalized to zero before
/// comparing across orders, so membership is invariant under positive affine
/// transformations.
pub fn classify(table: &ScoringTable) -> ClassMembership {
    let top = side_flags(table, |po| po.top(), true);
    let bottom = side_flags(table, |po| po.bottom(), false);
    ClassMembership {
        plurality_class: top.class,
        simple_plurality: top.simple,
        monotonic_simple_plurality: top.monotonic,
        uniform_plurality: top.uniform,
        anti_plurality_class: bottom.class,
        simple_anti_plurality: bottom.simple,
        monotonic_simple_anti_plurality: bottom.monotonic,
        uniform_anti_plurality: bottom.uniform,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::scoring::*;

    fn membership(s: &dyn ScoringFunction, m: usize) -> ClassMembership {
        classify(&tabulate(s, m).unwrap())
    }

    fn ints(values: &[i64]) -> Vec<Score> {
        values.iter().map(|&v| Score::from_integer(v)).collect()
    }

    #[test]
    fn tabulation_shape() {
        let t = tabulate(&UniformPlurality, 2).unwrap();
        assert_eq!(t.rows.len(), 3);
        let t = tabulate(&BordaDominance, 3).unwrap();
        assert!(t.rows.iter().all(|r| r.len() == 3));
        assert_eq!(t, tabulate(&BordaDominance, 3).unwrap());
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let size = SizeApproval::new(ints(&[3, 2, 1])).unwrap();
        assert!(matches!(tabulate(&size, 4), Err(Error::Arity { .. })));
    }

    #[test]
    fn uniform_plurality_is_in_every_plurality_class() {
        let c = membership(&UniformPlurality, 3);
        assert!(
            c.plurality_class
                && c.simple_plurality
                && c.monotonic_simple_plurality
                && c.uniform_plurality
        );
        assert!(!c.anti_plurality_class);
    }

    #[test]
    fn uniform_anti_plurality_is_in_every_anti_class() {
        let c = membership(&UniformAntiPlurality, 3);
        assert!(
            c.anti_plurality_class
                && c.simple_anti_plurality
                && c.monotonic_simple_anti_plurality
                && c.uniform_anti_plurality
        );
        assert!(!c.plurality_class);
    }

    #[test]
    fn dominance_plurality_is_in_the_class_but_not_simple() {
        let c = membership(&DominancePlurality, 3);
        assert!(c.plurality_class);
        assert!(!c.simple_plurality);
    }

    #[test]
    fn borda_dominance_is_outside_both_classes() {
        let c = membership(&BordaDominance, 3);
        assert!(!c.plurality_class);
        assert!(!c.anti_plurality_class);
    }

    #[test]
    fn size_families() {
        let harmonic = SizeApproval::new(vec![
            Score::from_integer(1),
            Score::new(1, 2),
            Score::new(1, 3),
        ])
        .unwrap();
        let c = membership(&harmonic, 3);
        assert!(c.monotonic_simple_plurality);
        assert!(!c.uniform_plurality);
        let anti = AntiSizeApproval::new(ints(&[3, 2, 1])).unwrap();
        let c = membership(&anti, 3);
        assert!(c.monotonic_simple_anti_plurality);
        assert!(!c.uniform_anti_plurality);
    }

    #[test]
    fn classification_survives_affine_maps() {
        let builtins: Vec<Arc<dyn ScoringFunction>> = vec![
            Arc::new(UniformPlurality),
            Arc::new(UniformAntiPlurality),
            Arc::new(DominancePlurality),
            Arc::new(BordaDominance),
            Arc::new(SizeApproval::new(ints(&[3, 2, 1])).unwrap()),
        ];
        for s in builtins {
            let shifted =
                Affine::new(s.clone(), Score::new(7, 2), Score::from_integer(-3)).unwrap();
            assert_eq!(
                membership(s.as_ref(), 3),
                membership(&shifted, 3),
                "{}",
                s.name()
            );
        }
    }

    #[test]
    fn positionality() {
        assert!(is_positional(&UniformPlurality, 3).unwrap());
        assert!(is_positional(&BordaDominance, 4).unwrap());
        let doubled = DoubledAlternative {
            favoured: Alternative(0),
            side: Side::Top,
        };
        assert!(!is_positional(&doubled, 3).unwrap());
    }
}
