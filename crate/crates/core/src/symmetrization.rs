//! The symmetrized product `x∘y = ½(x·y + y·x)` of a post-Lie structure on a
//! pair of two-step nilpotent Lie algebras, and the identities deciding when it
//! is a CPA-structure on `g` or on `n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{vector, Field, Matrix, Scalar};
use crate::pa::{self, combine, BilinearProduct, PaError, PaPair};
use crate::verdict::{Identity, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetrizationError {
    #[error("{0} is not nilpotent of class at most 2")]
    NotTwoStep(&'static str),
    #[error("product is not a pre-Lie structure:\n{0}")]
    NotPreLie(Verdict),
    #[error("product is not a post-Lie structure with abelian g:\n{0}")]
    NotLr(Verdict),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error(transparent)]
    Pa(#[from] PaError),
}

/// `x∘y = ½(x·y + y·x)` together with the pair it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedProduct {
    source: PaPair,
    product: BilinearProduct,
}

impl SymmetrizedProduct {
    pub fn product(&self) -> &BilinearProduct {
        &self.product
    }

    pub fn source(&self) -> &PaPair {
        &self.source
    }

    /// `ℓ(x)`, the left multiplication of `∘`.
    pub fn left_op(&self, x: &[Scalar]) -> Matrix {
        self.product.left_op(x)
    }
}

pub fn symmetrize(pair: &PaPair) -> SymmetrizedProduct {
    SymmetrizedProduct {
        source: pair.clone(),
        product: pair.product().symmetrized(),
    }
}

/// Result of a CPA construction: either the symmetrized product is a
/// CPA-structure, or the deciding identity fails with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CpaOutcome {
    Cpa(SymmetrizedProduct),
    ConditionFailure {
        verdict: Verdict,
        symmetrized: SymmetrizedProduct,
    },
}

impl CpaOutcome {
    pub fn is_cpa(&self) -> bool {
        matches!(self, CpaOutcome::Cpa(_))
    }

    pub fn symmetrized(&self) -> &SymmetrizedProduct {
        match self {
            CpaOutcome::Cpa(s) => s,
            CpaOutcome::ConditionFailure { symmetrized, .. } => symmetrized,
        }
    }

    pub fn failure(&self) -> Option<&Verdict> {
        match self {
            CpaOutcome::Cpa(_) => None,
            CpaOutcome::ConditionFailure { verdict, .. } => Some(verdict),
        }
    }
}

/// The identity `[L(x)+R(x), ad(y)] = ad(x·y + y·x)` checked in three
/// equivalent forms: as an operator identity on basis pairs, in element form
/// on basis triples, and in the rewritten operator form. All witnesses are
/// indexed by the element-form triple `(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymAdReport {
    pub operator: Verdict,
    pub element: Verdict,
    pub rewritten: Verdict,
}

impl SymAdReport {
    pub fn is_ok(&self) -> bool {
        self.operator.is_ok()
    }

    /// Whether the three forms reach the same verdict.
    pub fn agree(&self) -> bool {
        self.operator.is_ok() == self.element.is_ok()
            && self.element.is_ok() == self.rewritten.is_ok()
            && self.operator.failures() == self.element.failures()
            && self.element.failures() == self.rewritten.failures()
    }
}

pub fn check_sym_ad(pair: &PaPair) -> SymAdReport {
    let d = pair.dim();
    let f = pair.field();
    let ops = pair.operators();
    let g = pair.g();
    let p = pair.product();
    let sym_ops: Vec<Matrix> = ops.left.iter().zip(&ops.right).map(|(l, r)| l + r).collect();
    let sym = |i: usize, j: usize| vector::add(p.basis_product(i, j), p.basis_product(j, i));

    let mut operator = Verdict::ok();
    for x in 0..d {
        for y in 0..d {
            let lhs = sym_ops[x].commutator(&ops.ad[y]);
            let rhs = combine(f, d, &ops.ad, &sym(x, y));
            operator.compare_operators(Identity::SymAd, &[x, y], &lhs, &rhs);
        }
    }

    let mut element = Verdict::ok();
    let mut rewritten = Verdict::ok();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let gyz = g.bracket_basis(y, z);
                let lhs = sym_ops[x].apply(gyz);
                let rhs = vector::sub(&ops.ad[y].apply(&sym(x, z)), &ops.ad[z].apply(&sym(x, y)));
                element.compare(Identity::SymAdElement, &[x, y, z], lhs, rhs);

                let lhs = combine(f, d, &sym_ops, gyz).column(x);
                let rhs = vector::sub(
                    &ops.ad[y].apply(&sym_ops[z].column(x)),
                    &ops.ad[z].apply(&sym_ops[y].column(x)),
                );
                rewritten.compare(Identity::SymAdOperator, &[x, y, z], lhs, rhs);
            }
        }
    }
    SymAdReport {
        operator,
        element,
        rewritten,
    }
}

/// The two consequences `[L(x)+R(x), ad(y)] = [L(y)+R(y), ad(x)]` and
/// `2[L(x),ad(y)] + 2[ad(x),L(y)] = [ad(y),Ad(x)] + [Ad(y),ad(x)]`.
pub fn check_sym_ad_consequences(pair: &PaPair) -> Verdict {
    let d = pair.dim();
    let f = pair.field();
    let ops = pair.operators();
    let two = f.from_i64(2);
    let mut v = Verdict::ok();
    for x in 0..d {
        for y in 0..d {
            let lhs = (&ops.left[x] + &ops.right[x]).commutator(&ops.ad[y]);
            let rhs = (&ops.left[y] + &ops.right[y]).commutator(&ops.ad[x]);
            v.compare_operators(Identity::SymAdSwap, &[x, y], &lhs, &rhs);
        }
    }
    for x in 0..d {
        for y in 0..d {
            let lhs = (&ops.left[x].commutator(&ops.ad[y]) + &ops.ad[x].commutator(&ops.left[y])).scale(&two);
            let rhs = &ops.ad[y].commutator(&ops.big_ad[x]) + &ops.big_ad[y].commutator(&ops.ad[x]);
            v.compare_operators(Identity::LeftAdMixed, &[x, y], &lhs, &rhs);
        }
    }
    v
}

fn require_two_step(alg: &LieAlgebra, name: &'static str) -> Result<(), SymmetrizationError> {
    if alg.is_at_most_two_step() {
        Ok(())
    } else {
        Err(SymmetrizationError::NotTwoStep(name))
    }
}

/// For `g`, `n` nilpotent of class ≤ 2: `x∘y` is a CPA-structure on `g`
/// exactly when `[L(x)+R(x), ad(y)] = ad(x·y + y·x)` holds.
pub fn cpa_on_g(pair: &PaPair) -> Result<CpaOutcome, SymmetrizationError> {
    require_two_step(pair.g(), "g")?;
    require_two_step(pair.n(), "n")?;
    let report = check_sym_ad(pair);
    let symmetrized = symmetrize(pair);
    Ok(if report.is_ok() {
        CpaOutcome::Cpa(symmetrized)
    } else {
        CpaOutcome::ConditionFailure {
            verdict: report.operator,
            symmetrized,
        }
    })
}

/// The pair of identities `[ad(x),Ad(y)] = Ad([x,y])` and
/// `L({x,y}) − L([x,y]) = ½(ad({x,y}) + [ad(y),L(x)] + [L(y),ad(x)])`.
pub fn check_ad_compatibility(pair: &PaPair) -> Verdict {
    let d = pair.dim();
    let f = pair.field();
    let ops = pair.operators();
    let (g, n) = (pair.g(), pair.n());
    let mut v = Verdict::ok();
    for x in 0..d {
        for y in 0..d {
            let lhs = ops.ad[x].commutator(&ops.big_ad[y]);
            let rhs = combine(f, d, &ops.big_ad, g.bracket_basis(x, y));
            v.compare_operators(Identity::AdAd, &[x, y], &lhs, &rhs);
        }
    }
    let half = f.one().half();
    for x in 0..d {
        for y in 0..d {
            let lhs =
                &combine(f, d, &ops.left, n.bracket_basis(x, y)) - &combine(f, d, &ops.left, g.bracket_basis(x, y));
            let inner = &(&combine(f, d, &ops.ad, n.bracket_basis(x, y)) + &ops.ad[y].commutator(&ops.left[x]))
                + &ops.left[y].commutator(&ops.ad[x]);
            let rhs = inner.scale(&half);
            v.compare_operators(Identity::LeftBracketDefect, &[x, y], &lhs, &rhs);
        }
    }
    v
}

/// For `g`, `n` nilpotent of class ≤ 2: `x∘y` is a CPA-structure on `n`
/// exactly when [`check_ad_compatibility`] passes.
pub fn cpa_on_n(pair: &PaPair) -> Result<CpaOutcome, SymmetrizationError> {
    require_two_step(pair.g(), "g")?;
    require_two_step(pair.n(), "n")?;
    let verdict = check_ad_compatibility(pair);
    let symmetrized = symmetrize(pair);
    Ok(if verdict.is_ok() {
        CpaOutcome::Cpa(symmetrized)
    } else {
        CpaOutcome::ConditionFailure { verdict, symmetrized }
    })
}

/// A pre-Lie product on a two-step nilpotent `g` symmetrizes to a
/// CPA-structure exactly when every `L(x)` is a derivation of `g`.
pub fn prelie_symmetrize(g: &LieAlgebra, prod: &BilinearProduct) -> Result<CpaOutcome, SymmetrizationError> {
    require_two_step(g, "g")?;
    let prelie = pa::check_prelie(g, prod)?;
    if !prelie.is_ok() {
        return Err(SymmetrizationError::NotPreLie(prelie));
    }
    let pair = PaPair::prelie(g.clone(), prod.clone())?;
    let d = g.dim();
    let left = prod.left_ops();
    let ad: Vec<Matrix> = (0..d).map(|i| g.ad_basis(i)).collect();
    let mut verdict = Verdict::ok();
    for x in 0..d {
        for y in 0..d {
            let lhs = left[x].commutator(&ad[y]);
            let rhs = combine(g.field(), d, &ad, prod.basis_product(x, y));
            verdict.compare_operators(Identity::LeftDerivationOfG, &[x, y], &lhs, &rhs);
        }
    }
    let symmetrized = symmetrize(&pair);
    Ok(if verdict.is_ok() {
        CpaOutcome::Cpa(symmetrized)
    } else {
        CpaOutcome::ConditionFailure { verdict, symmetrized }
    })
}

/// Completeness of the LR-structure `-prod` on `n`: all left multiplications
/// nilpotent. `prod` is the post-Lie product on `(abelian, n)`.
pub fn lr_completeness(n: &LieAlgebra, prod: &BilinearProduct) -> Result<bool, SymmetrizationError> {
    let v = pa::check_lr(n, prod)?;
    if !v.is_ok() {
        return Err(SymmetrizationError::NotLr(v));
    }
    Ok(PaPair::lr(n.clone(), prod.clone())?.all_left_mults_nilpotent())
}

/// `{n,n}·n = 0`, i.e. `L({x,y}) = 0` for all basis `x, y`.
pub fn derived_n_acts_trivially(pair: &PaPair) -> bool {
    let d = pair.dim();
    let left = pair.product().left_ops();
    (0..d).all(|i| (0..d).all(|j| combine(pair.field(), d, &left, pair.n().bracket_basis(i, j)).is_zero()))
}

/// `n·{n,n} = 0`, i.e. `R({x,y}) = 0` for all basis `x, y`.
pub fn derived_n_annihilated(pair: &PaPair) -> bool {
    let d = pair.dim();
    let right = pair.product().right_ops();
    (0..d).all(|i| (0..d).all(|j| combine(pair.field(), d, &right, pair.n().bracket_basis(i, j)).is_zero()))
}

fn require_abelian_g(pair: &PaPair) -> Result<(), SymmetrizationError> {
    if pair.g().is_abelian() {
        Ok(())
    } else {
        Err(SymmetrizationError::HypothesisNotMet("g is not abelian".into()))
    }
}

/// Number of random centralizer triples drawn by [`centralizer_check`].
pub const CENTRALIZER_RANDOM_TRIPLES: usize = 100;

/// For abelian `g` and two-step nilpotent `n`: `x·{p,q} = 0` whenever
/// `{x,p} = {x,q} = 0`. The condition on `(x, p, q)` is not linear, so basis
/// triples are complemented by random triples with `p, q` drawn from the
/// centralizer of a random `x` (witnesses of those carry no indices).
pub fn centralizer_check(pair: &PaPair, seed: u64) -> Result<Verdict, SymmetrizationError> {
    require_abelian_g(pair)?;
    if !pair.n().is_at_most_two_step() {
        return Err(SymmetrizationError::HypothesisNotMet(
            "n is not nilpotent of class at most 2".into(),
        ));
    }
    let d = pair.dim();
    let f = pair.field();
    let n = pair.n();
    let p = pair.product();
    let mut v = Verdict::ok();
    for x in 0..d {
        for a in 0..d {
            if !vector::is_zero(n.bracket_basis(x, a)) {
                continue;
            }
            for b in a + 1..d {
                if !vector::is_zero(n.bracket_basis(x, b)) {
                    continue;
                }
                let lhs = p.product(&vector::unit(f, d, x), n.bracket_basis(a, b));
                v.compare(Identity::CentralizerKillsBracket, &[x, a, b], lhs, vector::zero(f, d));
            }
        }
    }
    if d == 0 {
        return Ok(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CENTRALIZER_RANDOM_TRIPLES {
        let x = random_sparse_vector(&mut rng, f, d);
        let centralizer = n.adjoint(&x).expect("length").kernel().basis();
        let pv = random_combination(&mut rng, f, d, &centralizer);
        let qv = random_combination(&mut rng, f, d, &centralizer);
        let bracket = n.bracket(&pv, &qv).expect("length");
        v.compare(
            Identity::CentralizerKillsBracket,
            &[],
            p.product(&x, &bracket),
            vector::zero(f, d),
        );
    }
    Ok(v)
}

fn random_small(rng: &mut ChaCha8Rng, f: Field) -> Scalar {
    f.from_i64(rng.gen_range(-5..=5))
}

/// Random vector supported on a random subset of the basis; sparse support
/// keeps centralizers large.
fn random_sparse_vector(rng: &mut ChaCha8Rng, f: Field, d: usize) -> Vec<Scalar> {
    let mut v = vector::zero(f, d);
    let support = rng.gen_range(1..=d.min(2));
    for _ in 0..support {
        let i = rng.gen_range(0..d);
        v[i] = random_small(rng, f);
    }
    v
}

fn random_combination(rng: &mut ChaCha8Rng, f: Field, d: usize, basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut v = vector::zero(f, d);
    for b in basis {
        let c = random_small(rng, f);
        vector::axpy(&mut v, &c, b);
    }
    v
}

/// For abelian `g` and `n` Heisenberg of dimension ≥ 5: `Z(n)·n = n·Z(n) = 0`.
pub fn center_annihilates_check(pair: &PaPair) -> Result<Verdict, SymmetrizationError> {
    require_abelian_g(pair)?;
    if !(pair.n().is_heisenberg() && pair.dim() >= 5) {
        return Err(SymmetrizationError::HypothesisNotMet(
            "n is not a Heisenberg algebra of dimension at least 5".into(),
        ));
    }
    let d = pair.dim();
    let f = pair.field();
    let p = pair.product();
    let mut v = Verdict::ok();
    for z in pair.n().center().basis() {
        for i in 0..d {
            let e = vector::unit(f, d, i);
            v.compare(Identity::CenterAnnihilates, &[i], p.product(&z, &e), vector::zero(f, d));
            v.compare(Identity::CenterAnnihilates, &[i], p.product(&e, &z), vector::zero(f, d));
        }
    }
    Ok(v)
}
