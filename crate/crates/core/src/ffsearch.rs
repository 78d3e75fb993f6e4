//! Exhaustive enumeration of post-Lie structures over small prime fields.
//!
//! Three strategies are available:
//!
//! * [`Strategy::RawTensor`] walks every product tensor (dimension ≤ 2).
//! * [`Strategy::HomThroughDerivations`] walks tuples of derivations of `n`
//!   that form a representation of `g`, solving the linear part of the skew
//!   axiom for each new operator instead of enumerating it.
//! * [`Strategy::LinearPruned`] solves the skew and derivation axioms, both
//!   linear in the product tensor, and walks the resulting affine space.
//!
//! Every accepted tensor is re-verified with exact [`PaPair::check_pa`].
//! Output is sorted lexicographically by product tensor, so it does not
//! depend on the strategy or on the thread count.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{Field, Scalar};
use crate::pa::{BilinearProduct, PaPair};

/// Largest dimension handled by the search kernels.
pub const MAX_DIM: usize = 3;

const CHUNKS: u64 = 256;

#[derive(Debug, Error, Clone)]
pub enum SearchError {
    #[error("finite field search needs an odd prime field, got {0}")]
    NotPrimeField(Field),
    #[error("unsupported search: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded after {} candidates; partial result with {} structures", .partial.examined, .partial.structures.len())]
    ResourceExceeded { partial: Box<SearchResult> },
    #[error("accepted tensor #{0} failed exact re-verification")]
    Reverification(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    RawTensor,
    HomThroughDerivations,
    LinearPruned,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::RawTensor => "raw-tensor",
            Strategy::HomThroughDerivations => "hom-through-derivations",
            Strategy::LinearPruned => "linear-pruned",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the nominal number of candidates.
    pub max_candidates: Option<u128>,
    pub time_budget: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    g: LieAlgebra,
    n: LieAlgebra,
    p: u32,
    strategy: Strategy,
    limits: Limits,
}

impl SearchSpec {
    pub fn new(g: LieAlgebra, n: LieAlgebra, strategy: Strategy) -> Result<Self, SearchError> {
        let p = match g.field() {
            Field::Prime(m) => m.get(),
            other => return Err(SearchError::NotPrimeField(other)),
        };
        if n.field() != g.field() {
            return Err(SearchError::Unsupported("g and n live over different fields".into()));
        }
        if g.dim() != n.dim() {
            return Err(SearchError::Unsupported("g and n have different dimensions".into()));
        }
        if g.dim() == 0 || g.dim() > MAX_DIM {
            return Err(SearchError::Unsupported(format!(
                "dimension {} is outside 1..={MAX_DIM}",
                g.dim()
            )));
        }
        match strategy {
            Strategy::RawTensor if g.dim() > 2 => {
                return Err(SearchError::Unsupported(
                    "raw tensor search is limited to dimension 2".into(),
                ))
            }
            Strategy::HomThroughDerivations if template(&g).is_none() => {
                return Err(SearchError::Unsupported(
                    "derivation search needs g abelian or [e1,e2] = c e3 as its only bracket".into(),
                ))
            }
            _ => {}
        }
        Ok(Self {
            g,
            n,
            p,
            strategy,
            limits: Limits::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn n(&self) -> &LieAlgebra {
        &self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub structures: Vec<PaPair>,
    /// Size of the space the strategy walks, before pruning.
    pub nominal_candidates: u128,
    /// Points actually tested against the axioms.
    pub examined: u64,
    pub complete: bool,
}

/// Runs the search; an exceeded limit yields the partial result inside the
/// error.
pub fn enumerate_pa(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let ctx = Ctx::new(spec);
    let raw = match spec.strategy {
        Strategy::RawTensor => ctx.raw_tensor(spec.limits),
        Strategy::HomThroughDerivations => ctx.hom(spec.limits),
        Strategy::LinearPruned => ctx.linear_pruned(spec.limits),
    };
    let mut tensors = raw.tensors;
    tensors.sort_unstable();
    let field = spec.g.field();
    let mut structures = Vec::with_capacity(tensors.len());
    for (idx, t) in tensors.iter().enumerate() {
        let a: Vec<Scalar> = t.iter().map(|&x| field.from_i64(i64::from(x))).collect();
        let prod = BilinearProduct::new(field, spec.g.dim(), a).expect("tensor length");
        let pair = PaPair::new(spec.g.clone(), spec.n.clone(), prod).expect("matching dimensions");
        if !pair.check_pa().is_ok() {
            return Err(SearchError::Reverification(idx));
        }
        structures.push(pair);
    }
    let result = SearchResult {
        structures,
        nominal_candidates: raw.nominal,
        examined: raw.examined,
        complete: raw.complete,
    };
    if result.complete {
        Ok(result)
    } else {
        Err(SearchError::ResourceExceeded {
            partial: Box::new(result),
        })
    }
}

// ---------------------------------------------------------------------------
// F_p kernels on fixed-size arrays

type Mat = [[u32; MAX_DIM]; MAX_DIM];
type Tensor = [[[u32; MAX_DIM]; MAX_DIM]; MAX_DIM];

#[derive(Clone, Copy)]
struct Fp(u32);

impl Fp {
    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        self.pow(a, self.0 - 2)
    }
}

fn residue(s: &Scalar) -> u32 {
    s.residue().expect("prime field scalar")
}

fn tensor_of(alg: &LieAlgebra) -> Tensor {
    let d = alg.dim();
    let mut t = [[[0; MAX_DIM]; MAX_DIM]; MAX_DIM];
    for (i, ti) in t.iter_mut().enumerate().take(d) {
        for (j, tij) in ti.iter_mut().enumerate().take(d) {
            for (k, x) in tij.iter_mut().enumerate().take(d) {
                *x = residue(alg.constant(i, j, k));
            }
        }
    }
    t
}

/// Structure of `g` usable by the derivation search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Template {
    Abelian,
    /// `[e1,e2] = c e3` is the only bracket; `L(e3) = c⁻¹[L(e1),L(e2)]`.
    Heis3 {
        c: u32,
    },
}

fn template(g: &LieAlgebra) -> Option<Template> {
    if g.is_abelian() {
        return Some(Template::Abelian);
    }
    if g.dim() != 3 {
        return None;
    }
    let t = tensor_of(g);
    let c = t[0][1][2];
    let mut only = t;
    only[0][1][2] = 0;
    only[1][0][2] = 0;
    let rest_zero = only.iter().flatten().flatten().all(|&x| x == 0);
    (c != 0 && rest_zero).then_some(Template::Heis3 { c })
}

struct RawOutcome {
    tensors: Vec<Vec<u32>>,
    nominal: u128,
    examined: u64,
    complete: bool,
}

struct Ctx {
    fp: Fp,
    p: u32,
    d: usize,
    c: Tensor,
    b: Tensor,
    g: LieAlgebra,
    n: LieAlgebra,
}

/// Chunked, ordered parallel walk of `0..total` with a time budget.
fn walk<F>(total: u64, deadline: Option<Instant>, f: F) -> (Vec<Vec<u32>>, u64, bool)
where
    F: Fn(u64, &mut Vec<Vec<u32>>) -> u64 + Sync,
{
    let chunk = total.div_ceil(CHUNKS).max(1);
    let n_chunks = total.div_ceil(chunk);
    let expired = AtomicBool::new(false);
    let parts: Vec<(Vec<Vec<u32>>, u64, bool)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let mut out = Vec::new();
            let mut examined = 0u64;
            let start = ci * chunk;
            let end = (start + chunk).min(total);
            for idx in start..end {
                if let Some(dl) = deadline {
                    if expired.load(Ordering::Relaxed) || (idx % 64 == 0 && Instant::now() >= dl) {
                        expired.store(true, Ordering::Relaxed);
                        return (out, examined, false);
                    }
                }
                examined += f(idx, &mut out);
            }
            (out, examined, true)
        })
        .collect();
    let mut all = Vec::new();
    let mut examined = 0;
    let mut complete = true;
    for (out, e, c) in parts {
        all.extend(out);
        examined += e;
        complete &= c;
    }
    (all, examined, complete)
}

/// `idx` in base `p`, most significant digit first.
fn base_p_digits(p: u32, mut idx: u64, len: usize) -> Vec<u32> {
    let p = u64::from(p);
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % p) as u32;
        idx /= p;
    }
    v
}

fn upow(p: u32, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(u128::from(p)))
}

/// Number of outer indices to process, each carrying `weight` nominal
/// candidates, under `limits`. Returns `(count, truncated)`.
fn budget(outer: u64, weight: u128, limits: Limits) -> (u64, bool) {
    match limits.max_candidates {
        Some(max) if u128::from(outer) * weight > max => ((max / weight.max(1)) as u64, true),
        _ => (outer, false),
    }
}

impl Ctx {
    fn new(spec: &SearchSpec) -> Self {
        Self {
            fp: Fp(spec.p),
            p: spec.p,
            d: spec.g.dim(),
            c: tensor_of(&spec.g),
            b: tensor_of(&spec.n),
            g: spec.g.clone(),
            n: spec.n.clone(),
        }
    }

    fn flatten(&self, a: &Tensor) -> Vec<u32> {
        let d = self.d;
        let mut v = Vec::with_capacity(d * d * d);
        for ai in a.iter().take(d) {
            for aij in ai.iter().take(d) {
                v.extend_from_slice(&aij[..d]);
            }
        }
        v
    }

    fn skew_ok(&self, a: &Tensor) -> bool {
        let (fp, d) = (self.fp, self.d);
        (0..d).all(|i| {
            (i + 1..d)
                .all(|j| (0..d).all(|k| fp.sub(a[i][j][k], a[j][i][k]) == fp.sub(self.c[i][j][k], self.b[i][j][k])))
        })
    }

    /// `x·{y,z} = {x·y,z} + {y,x·z}`
    fn derivation_ok(&self, a: &Tensor) -> bool {
        let (fp, d, b) = (self.fp, self.d, &self.b);
        for i in 0..d {
            for j in 0..d {
                for k in j + 1..d {
                    for m in 0..d {
                        let mut lhs = 0;
                        let mut rhs = 0;
                        for l in 0..d {
                            lhs = fp.add(lhs, fp.mul(b[j][k][l], a[i][l][m]));
                            rhs = fp.add(rhs, fp.mul(a[i][j][l], b[l][k][m]));
                            rhs = fp.add(rhs, fp.mul(a[i][k][l], b[j][l][m]));
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `[x,y]·z = x·(y·z) − y·(x·z)`
    fn representation_ok(&self, a: &Tensor) -> bool {
        let (fp, d, c) = (self.fp, self.d, &self.c);
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    for m in 0..d {
                        let mut lhs = 0;
                        let mut rhs = 0;
                        for l in 0..d {
                            lhs = fp.add(lhs, fp.mul(c[i][j][l], a[l][k][m]));
                            rhs = fp.add(rhs, fp.mul(a[j][k][l], a[i][l][m]));
                            rhs = fp.sub(rhs, fp.mul(a[i][k][l], a[j][l][m]));
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn pa_ok(&self, a: &Tensor) -> bool {
        self.skew_ok(a) && self.derivation_ok(a) && self.representation_ok(a)
    }

    fn raw_tensor(&self, limits: Limits) -> RawOutcome {
        let (p, d) = (self.p, self.d);
        let len = d * d * d;
        let nominal = upow(p, len);
        let (count, truncated) = budget(nominal as u64, 1, limits);
        let deadline = limits.time_budget.map(|t| Instant::now() + t);
        let (tensors, examined, complete) = walk(count, deadline, |idx, out| {
            let mut a = [[[0; MAX_DIM]; MAX_DIM]; MAX_DIM];
            let mut rest = idx;
            // The first coordinate is the most significant digit.
            for pos in (0..len).rev() {
                let (i, j, k) = (pos / (d * d), (pos / d) % d, pos % d);
                a[i][j][k] = (rest % u64::from(p)) as u32;
                rest /= u64::from(p);
            }
            if self.pa_ok(&a) {
                out.push(self.flatten(&a));
            }
            1
        });
        RawOutcome {
            tensors,
            nominal,
            examined,
            complete: complete && !truncated,
        }
    }

    fn mat_mul(&self, x: &Mat, y: &Mat) -> Mat {
        let (fp, d) = (self.fp, self.d);
        let mut r = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..d {
            for k in 0..d {
                if x[i][k] == 0 {
                    continue;
                }
                for j in 0..d {
                    r[i][j] = fp.add(r[i][j], fp.mul(x[i][k], y[k][j]));
                }
            }
        }
        r
    }

    fn commutator(&self, x: &Mat, y: &Mat) -> Mat {
        let xy = self.mat_mul(x, y);
        let yx = self.mat_mul(y, x);
        let mut r = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..self.d {
            for j in 0..self.d {
                r[i][j] = self.fp.sub(xy[i][j], yx[i][j]);
            }
        }
        r
    }

    fn combo(&self, basis: &[Mat], t: &[u32]) -> Mat {
        let mut r = [[0; MAX_DIM]; MAX_DIM];
        for (m, &tk) in basis.iter().zip(t) {
            if tk == 0 {
                continue;
            }
            for i in 0..self.d {
                for j in 0..self.d {
                    r[i][j] = self.fp.add(r[i][j], self.fp.mul(tk, m[i][j]));
                }
            }
        }
        r
    }

    fn digits(&self, idx: u64, len: usize) -> Vec<u32> {
        base_p_digits(self.p, idx, len)
    }

    /// Tensor with `L(e_i)` as given; `a[i][j][k] = L_i[k][j]`.
    fn tensor_from_left(&self, left: &[Mat]) -> Tensor {
        let mut a = [[[0; MAX_DIM]; MAX_DIM]; MAX_DIM];
        for (i, l) in left.iter().enumerate() {
            for j in 0..self.d {
                for k in 0..self.d {
                    a[i][j][k] = l[k][j];
                }
            }
        }
        a
    }

    fn derivation_basis(&self) -> Vec<Mat> {
        self.n
            .derivation_basis()
            .iter()
            .map(|m| {
                let mut r = [[0; MAX_DIM]; MAX_DIM];
                for (i, row) in r.iter_mut().enumerate().take(self.d) {
                    for (j, x) in row.iter_mut().enumerate().take(self.d) {
                        *x = residue(m.get(i, j));
                    }
                }
                r
            })
            .collect()
    }

    /// Affine solutions of `L_k e_i = L_i e_k − [e_i,e_k] + {e_i,e_k}` for all
    /// `i < k`, with `L_k` a combination of `der`.
    fn solve_next(&self, der: &[Mat], prev: &[Mat]) -> Option<Affine> {
        let d = self.d;
        let k = prev.len();
        let mut rows = Vec::new();
        for (i, li) in prev.iter().enumerate() {
            for r in 0..d {
                let coeffs: Vec<u32> = der.iter().map(|m| m[r][i]).collect();
                let rhs = self.fp.add(self.fp.sub(li[r][k], self.c[i][k][r]), self.b[i][k][r]);
                rows.push((coeffs, rhs));
            }
        }
        solve_affine(self.fp, der.len(), rows)
    }

    fn hom(&self, limits: Limits) -> RawOutcome {
        let der = self.derivation_basis();
        let s = der.len();
        let tpl = template(&self.g).expect("checked at construction");
        let free = match tpl {
            Template::Abelian => self.d,
            Template::Heis3 { .. } => 2,
        };
        let nominal = upow(self.p, s * free);
        let outer = upow(self.p, s) as u64;
        let (count, truncated) = budget(outer, upow(self.p, s * (free - 1)), limits);
        let deadline = limits.time_budget.map(|t| Instant::now() + t);
        let (tensors, examined, complete) = walk(count, deadline, |idx, out| {
            let l1 = self.combo(&der, &self.digits(idx, s));
            let mut stack = vec![l1];
            self.hom_extend(&der, tpl, free, &mut stack, out)
        });
        RawOutcome {
            tensors,
            nominal,
            examined,
            complete: complete && !truncated,
        }
    }

    /// Extends the prefix `stack` of left operators, returning the number of
    /// complete tuples tested.
    fn hom_extend(
        &self,
        der: &[Mat],
        tpl: Template,
        free: usize,
        stack: &mut Vec<Mat>,
        out: &mut Vec<Vec<u32>>,
    ) -> u64 {
        if stack.len() == free {
            if let Template::Heis3 { c } = tpl {
                let l12 = self.commutator(&stack[0], &stack[1]);
                let cinv = self.fp.inv(c);
                let mut l3 = [[0; MAX_DIM]; MAX_DIM];
                for i in 0..self.d {
                    for j in 0..self.d {
                        l3[i][j] = self.fp.mul(cinv, l12[i][j]);
                    }
                }
                let zero = [[0; MAX_DIM]; MAX_DIM];
                if self.commutator(&stack[0], &l3) != zero || self.commutator(&stack[1], &l3) != zero {
                    return 1;
                }
                stack.push(l3);
                let a = self.tensor_from_left(stack);
                stack.pop();
                if self.pa_ok(&a) {
                    out.push(self.flatten(&a));
                }
            } else {
                let a = self.tensor_from_left(stack);
                if self.pa_ok(&a) {
                    out.push(self.flatten(&a));
                }
            }
            return 1;
        }
        let Some(aff) = self.solve_next(der, stack) else {
            return 0;
        };
        let mut examined = 0;
        let inner = upow(self.p, aff.kernel.len()) as u64;
        for idx in 0..inner {
            let lam = self.digits(idx, aff.kernel.len());
            let mut t = aff.particular.clone();
            for (v, &l) in aff.kernel.iter().zip(&lam) {
                for (tk, &vk) in t.iter_mut().zip(v) {
                    *tk = self.fp.add(*tk, self.fp.mul(l, vk));
                }
            }
            let lk = self.combo(der, &t);
            if tpl == Template::Abelian {
                let zero = [[0; MAX_DIM]; MAX_DIM];
                if stack.iter().any(|li| self.commutator(li, &lk) != zero) {
                    examined += 1;
                    continue;
                }
            }
            stack.push(lk);
            examined += self.hom_extend(der, tpl, free, stack, out);
            stack.pop();
        }
        examined
    }

    fn linear_pruned(&self, limits: Limits) -> RawOutcome {
        let d = self.d;
        let fp = self.fp;
        let var = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
        let nvars = d * d * d;
        let mut rows = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let mut row = vec![0; nvars];
                    row[var(i, j, k)] = 1;
                    row[var(j, i, k)] = fp.sub(0, 1);
                    rows.push((row, fp.sub(self.c[i][j][k], self.b[i][j][k])));
                }
            }
        }
        let b = &self.b;
        for i in 0..d {
            for j in 0..d {
                for k in j + 1..d {
                    for m in 0..d {
                        let mut row = vec![0; nvars];
                        for l in 0..d {
                            let v = var(i, l, m);
                            row[v] = fp.add(row[v], b[j][k][l]);
                            let v = var(i, j, l);
                            row[v] = fp.sub(row[v], b[l][k][m]);
                            let v = var(i, k, l);
                            row[v] = fp.sub(row[v], b[j][l][m]);
                        }
                        rows.push((row, 0));
                    }
                }
            }
        }
        let Some(aff) = solve_affine(fp, nvars, rows) else {
            return RawOutcome {
                tensors: Vec::new(),
                nominal: 0,
                examined: 0,
                complete: true,
            };
        };
        let r = aff.kernel.len();
        let nominal = upow(self.p, r);
        let (count, truncated) = budget(nominal as u64, 1, limits);
        let deadline = limits.time_budget.map(|t| Instant::now() + t);
        let (tensors, examined, complete) = walk(count, deadline, |idx, out| {
            let lam = self.digits(idx, r);
            let mut flat = aff.particular.clone();
            for (v, &l) in aff.kernel.iter().zip(&lam) {
                if l == 0 {
                    continue;
                }
                for (x, &vx) in flat.iter_mut().zip(v) {
                    *x = fp.add(*x, fp.mul(l, vx));
                }
            }
            let mut a = [[[0; MAX_DIM]; MAX_DIM]; MAX_DIM];
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        a[i][j][k] = flat[var(i, j, k)];
                    }
                }
            }
            if self.representation_ok(&a) {
                debug_assert!(self.skew_ok(&a) && self.derivation_ok(&a));
                out.push(flat);
            }
            1
        });
        RawOutcome {
            tensors,
            nominal,
            examined,
            complete: complete && !truncated,
        }
    }
}

struct Affine {
    particular: Vec<u32>,
    kernel: Vec<Vec<u32>>,
}

/// Solves `Σ_v row[v] x_v = rhs` over F_p by Gauss–Jordan elimination.
fn solve_affine(fp: Fp, nvars: usize, rows: Vec<(Vec<u32>, u32)>) -> Option<Affine> {
    let mut m: Vec<Vec<u32>> = rows
        .into_iter()
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = fp.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..=nvars {
                    let sub = fp.mul(f, m[rank][c]);
                    m[r][c] = fp.sub(m[r][c], sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|r| r[nvars] != 0) {
        return None;
    }
    let mut particular = vec![0; nvars];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[r][nvars];
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; nvars];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = fp.sub(0, m[r][fc]);
            }
            v
        })
        .collect();
    Some(Affine { particular, kernel })
}

/// Flattened product tensor of a pair, as residues.
pub fn residues(pair: &PaPair) -> Vec<u32> {
    pair.product().tensor().iter().map(residue).collect()
}

// ---------------------------------------------------------------------------
// Corroboration on pairs of 3-dimensional Heisenberg algebras

/// Property checked on every structure found over `F_p` with `g = heis3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeisenbergProperty {
    /// `L(e3) = −½ Ad(e3)`
    LeftE3,
    /// every `L(x)` is nilpotent
    LeftNilpotent,
    /// `x·{y,z} = 0`, `[x,y]·z = −z·[x,y]` and the companion identities
    HeisenbergIdentities,
    /// `x∘y = ½(x·y + y·x)` is a CPA-structure on `g`
    SymmetrizedCpa,
    /// `H⁰ = 0` implies `n` nilpotent
    H0Nilpotent,
    /// `g` nilpotent implies `n` solvable
    NSolvable,
}

impl fmt::Display for HeisenbergProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeisenbergProperty::LeftE3 => "L(e3) = -1/2 Ad(e3)",
            HeisenbergProperty::LeftNilpotent => "all L(x) nilpotent",
            HeisenbergProperty::HeisenbergIdentities => "x.{y,z} = 0 and [x,y].z = -z.[x,y]",
            HeisenbergProperty::SymmetrizedCpa => "symmetrization is a CPA-structure on g",
            HeisenbergProperty::H0Nilpotent => "H0 = 0 implies n nilpotent",
            HeisenbergProperty::NSolvable => "n solvable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergViolation {
    pub property: HeisenbergProperty,
    /// Bracket of `n` as `(r1, …, r9)` residues.
    pub n: Vec<u32>,
    pub product: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergOptions {
    /// Check that every catalog instance over `F_p` appears in the search
    /// output for its own `n`.
    pub catalog_membership: bool,
    /// Cap on the number of distinct `n` swept for membership.
    pub max_algebras: Option<usize>,
    pub limits: Limits,
}

impl Default for HeisenbergOptions {
    fn default() -> Self {
        Self {
            catalog_membership: true,
            max_algebras: None,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergReport {
    pub p: u32,
    /// Structures on the standard pair `(heis3, heis3)`.
    pub standard_count: usize,
    pub standard_nominal: u128,
    /// Distinct brackets `n` enumerated, including the standard one.
    pub algebras_swept: usize,
    /// Structures checked for the properties, over all swept `n`.
    pub structures_checked: usize,
    pub catalog_instances: usize,
    /// Catalog instances not found in the search output, as
    /// `(family, parameters)`.
    pub catalog_missing: Vec<(String, Vec<u32>)>,
    pub catalog_skipped: usize,
    pub violations: Vec<HeisenbergViolation>,
}

impl HeisenbergReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.catalog_missing.is_empty()
    }
}

impl fmt::Display for HeisenbergReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "F_{}: {} structures on (heis3, heis3) from {} candidate homomorphisms",
            self.p, self.standard_count, self.standard_nominal
        )?;
        writeln!(
            f,
            "brackets swept: {}, structures checked: {}",
            self.algebras_swept, self.structures_checked
        )?;
        writeln!(
            f,
            "catalog instances: {} checked, {} missing, {} skipped",
            self.catalog_instances,
            self.catalog_missing.len(),
            self.catalog_skipped
        )?;
        for (family, params) in &self.catalog_missing {
            writeln!(f, "  missing {family} {params:?}")?;
        }
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}: n = {:?}, product = {:?}", v.property, v.n, v.product)?;
        }
        Ok(())
    }
}

/// Properties of a post-Lie structure on `(heis3, n)` that hold for every
/// structure in characteristic 0. Returns the failing ones.
pub fn heisenberg_properties(pair: &PaPair) -> Vec<HeisenbergProperty> {
    let field = pair.field();
    let mut failed = Vec::new();
    let minus_half = field.from_ratio(-1, 2).expect("2 invertible");
    if pair.product().left_basis(2) != pair.n().ad_basis(2).scale(&minus_half) {
        failed.push(HeisenbergProperty::LeftE3);
    }
    if !pair.all_left_mults_nilpotent() {
        failed.push(HeisenbergProperty::LeftNilpotent);
    }
    if !pair.heisenberg_pair_identities().is_ok() {
        failed.push(HeisenbergProperty::HeisenbergIdentities);
    }
    let sym = pair.product().symmetrized();
    if !crate::pa::check_cpa(pair.g(), &sym).map(|v| v.is_ok()).unwrap_or(false) {
        failed.push(HeisenbergProperty::SymmetrizedCpa);
    }
    if pair.h0().is_zero() && !pair.n().is_nilpotent() {
        failed.push(HeisenbergProperty::H0Nilpotent);
    }
    if pair.g().is_nilpotent() && !pair.n().is_solvable() {
        failed.push(HeisenbergProperty::NSolvable);
    }
    failed
}

fn bracket_residues(n: &LieAlgebra) -> Vec<u32> {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .flat_map(|&(i, j)| n.bracket_basis(i, j).iter().map(residue).collect::<Vec<_>>())
        .collect()
}

/// `(family, parameter residues, structure)`
type CatalogInstance = (String, Vec<u32>, PaPair);

/// Every admissible parameter tuple of every `pa52.*` family over `F_p`.
fn catalog_instances(field: Field, p: u32) -> Vec<CatalogInstance> {
    let mut out = Vec::new();
    for (fi, name) in crate::catalog::PA52_FAMILIES.iter().enumerate() {
        let arity = crate::catalog::entry(name).expect("family listed").params.len();
        let total = upow(p, arity) as u64;
        for idx in 0..total {
            let params = base_p_digits(p, idx, arity);
            let scalars: Vec<Scalar> = params.iter().map(|&x| field.from_i64(i64::from(x))).collect();
            if let Ok(pair) = crate::catalog::pa52_from_vec(fi + 1, field, &scalars) {
                out.push((name.to_string(), params, pair));
            }
        }
    }
    out
}

/// Enumerates post-Lie structures on `(heis3, heis3)` over `F_p` and checks
/// the characteristic-0 properties on each. With catalog membership enabled,
/// every `pa52.*` instance over `F_p` is looked up in the search output for
/// its own bracket `n`, and the structures found there are checked too.
pub fn corroborate_heisenberg(p: u32, options: &HeisenbergOptions) -> Result<HeisenbergReport, SearchError> {
    use std::collections::{BTreeMap, BTreeSet};

    let field = Field::prime(p).map_err(|_| SearchError::Unsupported(format!("p = {p} is not an odd prime")))?;
    let g = crate::catalog::heis3(field);
    let run = |n: &LieAlgebra| -> Result<SearchResult, SearchError> {
        let spec = SearchSpec::new(g.clone(), n.clone(), Strategy::HomThroughDerivations)?.with_limits(options.limits);
        enumerate_pa(&spec)
    };
    let check_all = |res: &SearchResult, violations: &mut Vec<HeisenbergViolation>| {
        let found: Vec<(Vec<HeisenbergProperty>, Vec<u32>)> = res
            .structures
            .par_iter()
            .map(|pair| (heisenberg_properties(pair), residues(pair)))
            .collect();
        for (failed, product) in found {
            for property in failed {
                violations.push(HeisenbergViolation {
                    property,
                    n: bracket_residues(res.structures[0].n()),
                    product: product.clone(),
                });
            }
        }
    };

    let standard_n = crate::catalog::heis3(field);
    let standard = run(&standard_n)?;
    let mut violations = Vec::new();
    check_all(&standard, &mut violations);
    let mut report = HeisenbergReport {
        p,
        standard_count: standard.structures.len(),
        standard_nominal: standard.nominal_candidates,
        algebras_swept: 1,
        structures_checked: standard.structures.len(),
        catalog_instances: 0,
        catalog_missing: Vec::new(),
        catalog_skipped: 0,
        violations,
    };
    if !options.catalog_membership {
        return Ok(report);
    }

    let mut found: BTreeMap<Vec<u32>, BTreeSet<Vec<u32>>> = BTreeMap::new();
    found.insert(
        bracket_residues(&standard_n),
        standard.structures.iter().map(residues).collect(),
    );
    let mut by_n: BTreeMap<Vec<u32>, Vec<CatalogInstance>> = BTreeMap::new();
    for inst in catalog_instances(field, p) {
        by_n.entry(bracket_residues(inst.2.n())).or_default().push(inst);
    }
    for (key, instances) in by_n {
        if !found.contains_key(&key) {
            if options.max_algebras.is_some_and(|m| found.len() >= m) {
                report.catalog_skipped += instances.len();
                continue;
            }
            let res = run(instances[0].2.n())?;
            report.structures_checked += res.structures.len();
            if !res.structures.is_empty() {
                check_all(&res, &mut report.violations);
            }
            found.insert(key.clone(), res.structures.iter().map(residues).collect());
        }
        let set = &found[&key];
        for (family, params, pair) in instances {
            report.catalog_instances += 1;
            if !set.contains(&residues(&pair)) {
                report.catalog_missing.push((family, params));
            }
        }
    }
    report.algebras_swept = found.len();
    Ok(report)
}
