use num_complex::Complex64;
use num_traits::Zero;

use super::ProjectionSetup;
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::poly::{rat, rationalize, to_complex, Rational, UniPoly};
use crate::roots::{all_roots, total_cmp};

/// A ramified fibre of the projection.
#[derive(Clone, Debug)]
pub struct BranchPoint {
    /// Pencil parameter.
    pub t: Complex64,
    /// The parameter itself when it is rational.
    pub exact: Option<Rational>,
    /// Factor of the discriminant vanishing at `t`.
    pub factor: UniPoly,
    /// Fibre multiplicities, exact and decreasing.
    pub partition: Vec<usize>,
    /// The fibre contains a singular point of the curve. Branches through
    /// it separate on the normalization, so the cycle type only refines
    /// the partition there.
    pub singular: bool,
    /// Local monodromy, once loops have been tracked.
    pub permutation: Option<Permutation>,
}

impl BranchPoint {
    pub fn cycle_type(&self) -> Option<Vec<usize>> {
        self.permutation.as_ref().map(Permutation::cycle_type)
    }

    /// The generator's cycles match the fibre: equal to the partition over
    /// smooth fibres, a refinement of it over singular ones.
    pub fn cycle_type_matches(&self) -> bool {
        match self.cycle_type() {
            None => false,
            Some(c) if self.singular => refines(&c, &self.partition),
            Some(c) => c == self.partition,
        }
    }
}

/// Whether the parts of `fine` can be grouped to give the parts of `coarse`.
pub(crate) fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    fn place(fine: &[usize], bins: &mut [usize]) -> bool {
        let Some((&first, rest)) = fine.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        for i in 0..bins.len() {
            if bins[i] >= first && !bins[..i].contains(&bins[i]) {
                bins[i] -= first;
                if place(rest, bins) {
                    return true;
                }
                bins[i] += first;
            }
        }
        false
    }
    let mut fine = fine.to_vec();
    fine.sort_unstable_by(|a, b| b.cmp(a));
    let mut bins = coarse.to_vec();
    fine.iter().sum::<usize>() == bins.iter().sum::<usize>() && place(&fine, &mut bins)
}

/// A rational root of `q` near `z`, verified exactly.
fn rational_root_near(q: &UniPoly, z: Complex64) -> Option<Rational> {
    if z.im.abs() > 1e-6 * z.norm().max(1.0) {
        return None;
    }
    let r = rationalize(z.re, 1_000_000)?;
    (q.eval(&r) == rat(0)).then_some(r)
}

/// Numeric roots of a square-free rational polynomial, with the rational
/// ones also given exactly.
pub(crate) fn simple_roots(q: &UniPoly) -> Result<Vec<(Complex64, Option<Rational>)>> {
    match q.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => {
            let r = -q.coeff(0) / q.coeff(1);
            Ok(vec![(to_complex(&r), Some(r))])
        }
        Some(n) => {
            let rs = all_roots(&q.to_complex(), 1e-9, 1e-14)?;
            if rs.clusters.len() != n {
                return Err(Error::BranchCollision(format!(
                    "{} numeric roots for a square-free factor of degree {n}",
                    rs.clusters.len()
                )));
            }
            Ok(rs
                .values()
                .into_iter()
                .map(|t| match rational_root_near(q, t) {
                    Some(r) => (to_complex(&r), Some(r)),
                    None => (t, None),
                })
                .collect())
        }
    }
}

/// Splits the square-free discriminant into the roots where the full
/// discriminant vanishes to order one and the rest. The order at a root is
/// the sum over the fibre of Milnor number plus contact order minus one, so
/// order one is exactly a single simple tangency at a smooth point.
pub(crate) fn split_simple(setup: &ProjectionSetup) -> (UniPoly, UniPoly) {
    let disc = &setup.discriminant;
    let simple = disc
        .discriminant
        .squarefree_decomposition()
        .into_iter()
        .next()
        .map(|p| p.monic())
        .unwrap_or_else(UniPoly::one);
    let rest = disc
        .squarefree
        .div_exact(&simple)
        .expect("order-one factor divides the square-free part");
    (simple, rest)
}

/// Branch points with exact fibre partitions. Points closer than
/// `collision_tol · max(1, |t|)` are reported as a collision.
pub fn branch_points(setup: &ProjectionSetup, collision_tol: f64) -> Result<Vec<BranchPoint>> {
    let e = setup.covering_degree;
    let (simple, rest) = split_simple(setup);
    let mut fibres = Vec::new();
    if !simple.is_constant() {
        let mut partition = vec![2];
        partition.resize(e - 1, 1);
        fibres.push((simple, partition, false));
    }
    if !rest.is_constant() {
        for (factor, profile) in setup.lines.profiles(&rest, true) {
            let partition = profile.fibre_partition();
            let singular = profile.classes.iter().any(|c| !c.is_center && c.is_singular());
            fibres.push((factor, partition, singular));
        }
    }
    let mut out = Vec::new();
    for (factor, partition, singular) in fibres {
        if partition.iter().sum::<usize>() != e || partition.iter().all(|&m| m == 1) {
            return Err(Error::Degenerate(format!(
                "fibre partition {partition:?} over a discriminant root"
            )));
        }
        for (t, exact) in simple_roots(&factor)? {
            out.push(BranchPoint {
                t,
                exact,
                factor: factor.clone(),
                partition: partition.clone(),
                singular,
                permutation: None,
            });
        }
    }
    out.sort_by(|a, b| total_cmp(&a.t, &b.t));
    check_separation(&out.iter().map(|b| b.t).collect::<Vec<_>>(), collision_tol)?;
    Ok(out)
}

pub(crate) fn check_separation(points: &[Complex64], tol: f64) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let scale = points[i].norm().max(points[j].norm()).max(1.0);
            if (points[i] - points[j]).norm() < tol * scale {
                return Err(Error::BranchCollision(format!(
                    "parameters {} and {} are closer than {tol:e}",
                    points[i], points[j]
                )));
            }
        }
    }
    Ok(())
}

/// Points that loops must avoid without encircling: the tangent line at
/// an inner center, where a fibre point runs off to the center, unless it
/// is itself a branch point.
pub fn obstacles(setup: &ProjectionSetup) -> Vec<Complex64> {
    setup
        .tangent_parameter
        .iter()
        .filter(|t| !setup.discriminant.squarefree.eval(t).is_zero())
        .map(to_complex)
        .collect()
}
