//! Equisection operators `T_q` and `S_q`.
//!
//! Each operator exists twice: geometrically, on labeled triangles, and
//! spectrally, as a rotation of the moduli disc. Decisions elsewhere in the
//! crate use the spectral form; the geometric form is what it is checked
//! against.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{line_intersection, reduce_angle, Line, Point, RHO};
use crate::moduli::{ModuliPoint, Triangle};
use crate::tolerance::Tolerance;

/// A division ratio. Any finite real is allowed, including values outside
/// `[0, 1]`.
pub type RatioQ = f64;

/// Absolute tolerance for comparing a float ratio against the special values
/// and for detecting poles of the rational maps of `q`.
pub const Q_EPS: f64 = 1e-12;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `T_q(△ABC) = △A'B'C'` with `A' = qB + (1-q)C`, `B' = qC + (1-q)A`,
/// `C' = qA + (1-q)B`.
///
/// The area scales by `1 - 3q + 3q²`, which has no real root, so the result is
/// never degenerate.
pub fn t_q_geometric(t: &Triangle, q: RatioQ) -> Triangle {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let p = 1.0 - q;
    Triangle::new_unchecked(b * q + c * p, c * q + a * p, a * q + b * p)
}

/// `S_q(△ABC) = △A''B''C''` where `A'' = AA' ∩ BB'`, `B'' = BB' ∩ CC'`,
/// `C'' = CC' ∩ AA'` for the division points of [`t_q_geometric`].
pub fn s_q_geometric(t: &Triangle, q: RatioQ, tol: Tolerance) -> Result<Triangle> {
    if (q - 0.5).abs() <= tol.relative {
        return Err(Error::MedianDegeneracy);
    }
    let d = t_q_geometric(t, q);
    let aa = Line::through(t.a(), d.a())?;
    let bb = Line::through(t.b(), d.b())?;
    let cc = Line::through(t.c(), d.c())?;
    let meet = |l1: &Line, l2: &Line| {
        line_intersection(l1, l2, tol).map_err(|e| match e {
            Error::ParallelLines => Error::MedianDegeneracy,
            e => e,
        })
    };
    let (a2, b2, c2) = (meet(&aa, &bb)?, meet(&bb, &cc)?, meet(&cc, &aa)?);
    Triangle::with_tolerance(a2, b2, c2, tol).map_err(|_| Error::MedianDegeneracy)
}

/// Rotation angle of `T_q` on the disc, `6 arg(-1 + (1 - 2q)√3 i)`, in
/// `(-π, π]`.
pub fn t_q_rotation_angle(q: RatioQ) -> f64 {
    reduce_angle(6.0 * Point::new(-1.0, (1.0 - 2.0 * q) * SQRT3).arg())
}

/// Rotation angle of `S_q` on the disc, `6 arg(ρ - q)`, in `(-π, π]`.
pub fn s_q_rotation_angle(q: RatioQ) -> f64 {
    reduce_angle(6.0 * (RHO - Point::real(q)).arg())
}

/// `T_q` acting on the disc.
pub fn t_q_spectral(w: ModuliPoint, q: RatioQ) -> ModuliPoint {
    w.rotated(t_q_rotation_angle(q))
}

/// `S_q` acting on the disc.
pub fn s_q_spectral(w: ModuliPoint, q: RatioQ) -> ModuliPoint {
    w.rotated(s_q_rotation_angle(q))
}

/// `T_q` is the identity on classes: `q ∈ {0, 1/2, 1}`.
pub fn q_identity(q: RatioQ) -> bool {
    [0.0, 0.5, 1.0].iter().any(|s| (q - s).abs() <= Q_EPS)
}

/// `T_q` is a non-trivial involution: `q ∈ {1/3, 2/3}`.
pub fn q_involution(q: RatioQ) -> bool {
    [1.0 / 3.0, 2.0 / 3.0].iter().any(|s| (q - s).abs() <= Q_EPS)
}

/// The six Möbius maps of `q` that relate ratios with equal or inverse
/// operators. They form a group isomorphic to S₃ under composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QMap {
    /// `q`
    Identity,
    /// `(2q - 1)/(3q - 1)`
    Cycle,
    /// `(q - 1)/(3q - 2)`
    CycleSquared,
    /// `1 - q`
    Complement,
    /// `(2q - 1)/(3q - 2)`
    SwapA,
    /// `q/(3q - 1)`
    SwapB,
}

impl QMap {
    pub const ALL: [QMap; 6] = [
        QMap::Identity,
        QMap::Cycle,
        QMap::CycleSquared,
        QMap::Complement,
        QMap::SwapA,
        QMap::SwapB,
    ];

    /// Maps giving the same operator: `T_{m(q)} = T_q`.
    pub const EQUAL: [QMap; 3] = [QMap::Identity, QMap::Cycle, QMap::CycleSquared];

    /// Maps giving the inverse operator: `T_{m(q)} = T_q⁻¹`.
    pub const INVERSE: [QMap; 3] = [QMap::Complement, QMap::SwapA, QMap::SwapB];

    /// Integer coefficients `(a, b, c, d)` of `(a q + b)/(c q + d)`.
    pub const fn coefficients(self) -> [i64; 4] {
        match self {
            QMap::Identity => [1, 0, 0, 1],
            QMap::Cycle => [2, -1, 3, -1],
            QMap::CycleSquared => [1, -1, 3, -2],
            QMap::Complement => [-1, 1, 0, 1],
            QMap::SwapA => [2, -1, 3, -2],
            QMap::SwapB => [1, 0, 3, -1],
        }
    }

    /// Evaluates the map; `None` at its pole.
    pub fn apply(self, q: RatioQ) -> Option<RatioQ> {
        let [a, b, c, d] = self.coefficients().map(|v| v as f64);
        let den = c * q + d;
        if den.abs() <= Q_EPS * (1.0 + (c * q).abs()) {
            return None;
        }
        Some((a * q + b) / den)
    }

    /// Identifies a coefficient matrix up to a nonzero scalar.
    fn from_matrix(m: [i64; 4]) -> Option<QMap> {
        QMap::ALL.into_iter().find(|f| {
            let n = f.coefficients();
            (0..4).all(|i| (0..4).all(|j| m[i] * n[j] == m[j] * n[i]))
        })
    }

    /// `self ∘ other`, by multiplying coefficient matrices.
    pub fn compose(self, other: QMap) -> QMap {
        let [a, b, c, d] = self.coefficients();
        let [e, f, g, h] = other.coefficients();
        let m = [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h];
        QMap::from_matrix(m).expect("the six maps are closed under composition")
    }
}

fn dedup_ratios(mut values: Vec<RatioQ>) -> Vec<RatioQ> {
    let mut out: Vec<RatioQ> = Vec::with_capacity(values.len());
    for v in values.drain(..) {
        if !out.iter().any(|u| (u - v).abs() <= Q_EPS * (1.0 + v.abs())) {
            out.push(v);
        }
    }
    out
}

/// All `q'` with `T_{q'} = T_q`: `q`, `(2q-1)/(3q-1)` unless `q = 1/3`,
/// `(q-1)/(3q-2)` unless `q = 2/3`.
pub fn q_equal_set(q: RatioQ) -> Vec<RatioQ> {
    dedup_ratios(QMap::EQUAL.iter().filter_map(|m| m.apply(q)).collect())
}

/// All `q'` with `T_{q'} = T_q⁻¹`: `1 - q`, `(2q-1)/(3q-2)` unless `q = 2/3`,
/// `q/(3q-1)` unless `q = 1/3`.
pub fn q_inverse_set(q: RatioQ) -> Vec<RatioQ> {
    dedup_ratios(QMap::INVERSE.iter().filter_map(|m| m.apply(q)).collect())
}

/// All `q''` with `T_q ∘ T_{q2} = T_{q''}`; branches with a vanishing
/// denominator are skipped.
pub fn q_compose(q: RatioQ, q2: RatioQ) -> Result<Vec<RatioQ>> {
    let s = q + q2;
    let p = q * q2;
    let scale = 1.0 + s.abs() + p.abs();
    let branches = [
        (3.0 * p - 2.0 * s + 1.0, 6.0 * p - 3.0 * s + 1.0),
        (-(s - 1.0), 3.0 * p - 3.0 * s + 2.0),
        (3.0 * p - s, 3.0 * p - 1.0),
    ];
    let values: Vec<RatioQ> = branches
        .into_iter()
        .filter(|(_, den)| den.abs() > Q_EPS * scale)
        .map(|(num, den)| num / den)
        .collect();
    if values.is_empty() {
        return Err(Error::AllBranchesDegenerate);
    }
    Ok(dedup_ratios(values))
}

/// Composition table of the six maps, `entries[i][j] = ALL[i] ∘ ALL[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub entries: [[QMap; 6]; 6],
}

impl GroupTable {
    fn index(m: QMap) -> usize {
        QMap::ALL.iter().position(|&x| x == m).expect("listed")
    }

    pub fn compose(&self, f: QMap, g: QMap) -> QMap {
        self.entries[Self::index(f)][Self::index(g)]
    }

    /// Two-sided identity element, if any.
    pub fn identity(&self) -> Option<QMap> {
        QMap::ALL.into_iter().find(|&e| {
            QMap::ALL
                .iter()
                .all(|&f| self.compose(e, f) == f && self.compose(f, e) == f)
        })
    }

    pub fn order(&self, f: QMap) -> usize {
        let id = self.identity().expect("group has an identity");
        let mut acc = f;
        for n in 1..=6 {
            if acc == id {
                return n;
            }
            acc = self.compose(acc, f);
        }
        unreachable!("element order exceeds group order")
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for f in QMap::ALL {
            *profile.entry(self.order(f)).or_default() += 1;
        }
        profile
    }

    pub fn is_abelian(&self) -> bool {
        QMap::ALL
            .iter()
            .all(|&f| QMap::ALL.iter().all(|&g| self.compose(f, g) == self.compose(g, f)))
    }

    pub fn is_associative(&self) -> bool {
        QMap::ALL.iter().all(|&f| {
            QMap::ALL.iter().all(|&g| {
                QMap::ALL
                    .iter()
                    .all(|&h| self.compose(self.compose(f, g), h) == self.compose(f, self.compose(g, h)))
            })
        })
    }
}

pub fn six_function_group_table() -> GroupTable {
    let mut entries = [[QMap::Identity; 6]; 6];
    for (i, f) in QMap::ALL.into_iter().enumerate() {
        for (j, g) in QMap::ALL.into_iter().enumerate() {
            entries[i][j] = f.compose(g);
        }
    }
    GroupTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::angle_distance;
    use crate::moduli::{phi, similar};
    use std::f64::consts::PI;

    fn tri() -> Triangle {
        Triangle::new(Point::new(0.3, 1.7), Point::new(-1.0, 0.2), Point::new(2.1, -0.4)).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn t_q_at_zero_relabels() {
        let t = tri();
        let t0 = t_q_geometric(&t, 0.0);
        assert_eq!(t0.vertices(), [t.c(), t.a(), t.b()]);
        assert!(similar(&t, &t0, tol()));
    }

    #[test]
    fn t_q_at_half_is_medial() {
        let t = tri();
        let m = t_q_geometric(&t, 0.5);
        assert!(similar(&t, &m, tol()));
        let ratio = t.side_lengths()[0] / m.side_lengths()[0];
        assert!((ratio - 2.0).abs() < 1e-14);
    }

    #[test]
    fn t_third_twice_returns_class() {
        let t = tri();
        let twice = t_q_geometric(&t_q_geometric(&t, 1.0 / 3.0), 1.0 / 3.0);
        assert!(similar(&t, &twice, tol()));
        assert!(!similar(&t, &t_q_geometric(&t, 1.0 / 3.0), tol()));
    }

    #[test]
    fn s_q_examples() {
        let t = tri();
        // q = 0: the cevians are the edge lines, meeting at the vertices.
        let s0 = s_q_geometric(&t, 0.0, tol()).unwrap();
        let edge_meet = line_intersection(
            &Line::through(t.a(), t.c()).unwrap(),
            &Line::through(t.b(), t.a()).unwrap(),
            tol(),
        )
        .unwrap();
        assert!(s0.a().distance(edge_meet) < 1e-14);
        assert!(similar(&t, &s0, tol()));

        assert_eq!(s_q_geometric(&t, 0.5, tol()), Err(Error::MedianDegeneracy));

        let s = s_q_geometric(&t, 0.3, tol()).unwrap();
        let expected = phi(&t).rotated(6.0 * (RHO - Point::real(0.3)).arg());
        assert!(phi(&s).distance(&expected) < 1e-12);
    }

    #[test]
    fn rotation_angle_examples() {
        assert!((t_q_rotation_angle(1.0 / 3.0) - PI).abs() < 1e-12);
        assert!(t_q_rotation_angle(0.0).abs() < 1e-12);
        assert!(angle_distance(s_q_rotation_angle(0.0), 0.0) < 1e-12);
        for q in [0.0, 0.5, 1.0] {
            assert!(angle_distance(t_q_rotation_angle(q), 0.0) < 1e-12);
        }
    }

    #[test]
    fn special_set_membership() {
        assert!(q_identity(0.5));
        assert!(q_involution(2.0 / 3.0));
        assert!(!q_identity(1.0 / 3.0));
        assert!(!q_involution(0.0));
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn equal_set_examples() {
        assert_eq!(sorted(q_equal_set(0.0)), vec![0.0, 0.5, 1.0]);
        let third = sorted(q_equal_set(1.0 / 3.0));
        assert_eq!(third.len(), 2);
        assert!((third[0] - 1.0 / 3.0).abs() < 1e-15 && (third[1] - 2.0 / 3.0).abs() < 1e-15);

        let set = q_equal_set(0.64);
        assert_eq!(set.len(), 3);
        assert!(set.iter().any(|v| (v - 0.28 / 0.92).abs() < 1e-15));
        for v in set {
            assert!(angle_distance(t_q_rotation_angle(v), t_q_rotation_angle(0.64)) < 1e-10);
        }
    }

    #[test]
    fn inverse_set_examples() {
        let third = sorted(q_inverse_set(1.0 / 3.0));
        assert_eq!(third.len(), 2);
        assert!((third[0] - 1.0 / 3.0).abs() < 1e-15 && (third[1] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(sorted(q_inverse_set(0.0)), vec![0.0, 0.5, 1.0]);
        for v in q_inverse_set(0.2) {
            assert!(angle_distance(t_q_rotation_angle(v) + t_q_rotation_angle(0.2), 0.0) < 1e-10);
        }
    }

    #[test]
    fn compose_examples() {
        let set = q_compose(1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!(set.iter().any(|v| v.abs() < 1e-15));

        let q = 0.27;
        for inv in q_inverse_set(q) {
            let set = q_compose(q, inv).unwrap();
            assert!(set.iter().any(|&v| q_identity(v)), "{q} ∘ {inv}: {set:?}");
        }

        for v in q_compose(0.0, 0.37).unwrap() {
            assert!(angle_distance(t_q_rotation_angle(v), t_q_rotation_angle(0.37)) < 1e-10);
        }
    }

    #[test]
    fn group_table_is_s3() {
        let table = six_function_group_table();
        assert_eq!(table.compose(QMap::Complement, QMap::Complement), QMap::Identity);
        assert_eq!(table.compose(QMap::Cycle, QMap::Cycle), QMap::CycleSquared);
        let at5 = QMap::Cycle.apply(QMap::Cycle.apply(5.0).unwrap()).unwrap();
        assert!((at5 - 4.0 / 13.0).abs() < 1e-15);
        assert_eq!(table.identity(), Some(QMap::Identity));
        assert!(table.is_associative());
        assert!(!table.is_abelian());
        let profile = table.order_profile();
        assert_eq!(profile, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
    }

    #[test]
    fn group_table_matches_pointwise_composition() {
        let table = six_function_group_table();
        for f in QMap::ALL {
            for g in QMap::ALL {
                let h = table.compose(f, g);
                for q in [-2.3, 0.1, 0.71, 4.0] {
                    if let Some(v) = g.apply(q).and_then(|x| f.apply(x)) {
                        assert!((v - h.apply(q).unwrap()).abs() < 1e-12);
                    }
                }
            }
        }
    }
}
