//! Modules over the triangular algebra as matrix triples `(M0, M1, h)`.
//!
//! `M0` and `M1` are `m`-nilpotent and `h : K^{d1} -> K^{d0}` intertwines
//! them, `M0 h = h M1`. A homomorphism `M -> N` is a pair `(f0, f1)` with
//! `f0 M0 = N0 f0`, `f1 M1 = N1 f1` and `f0 h_M = h_N f1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::linalg;
use crate::matrix::Matrix;
use crate::pairs::{canonical_decomposition, PairType, PartitionPair};
use crate::partition::{jordan_type, Partition};
use crate::polyhom::PolyHom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AModule<E> {
    m: usize,
    m0: Matrix<E>,
    m1: Matrix<E>,
    h: Matrix<E>,
}

impl<E: Clone + PartialEq> AModule<E> {
    /// Checks shapes, nilpotency and the intertwining relation.
    pub fn new<F: Field<Elem = E>>(f: &F, m: usize, m0: Matrix<E>, m1: Matrix<E>, h: Matrix<E>) -> Result<Self> {
        if !m0.is_square() || !m1.is_square() {
            return Err(Error::InvalidModule("M0 and M1 must be square".into()));
        }
        if h.rows() != m0.rows() || h.cols() != m1.rows() {
            return Err(Error::DimensionMismatch((h.rows(), h.cols()), (m0.rows(), m1.rows())));
        }
        if !linalg::is_nilpotent_of_order(f, &m0, m)? || !linalg::is_nilpotent_of_order(f, &m1, m)? {
            return Err(Error::NotNilpotent { m });
        }
        if m0.mul(f, &h)? != h.mul(f, &m1)? {
            return Err(Error::InvalidModule("M0 h != h M1".into()));
        }
        Ok(Self { m, m0, m1, h })
    }

    /// All-zero triple of dimension vector `(d0, d1)`.
    pub fn zero<F: Field<Elem = E>>(f: &F, m: usize, d0: usize, d1: usize) -> Self {
        Self {
            m,
            m0: Matrix::zeros(f, d0, d0),
            m1: Matrix::zeros(f, d1, d1),
            h: Matrix::zeros(f, d0, d1),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn m0(&self) -> &Matrix<E> {
        &self.m0
    }

    pub fn m1(&self) -> &Matrix<E> {
        &self.m1
    }

    pub fn h(&self) -> &Matrix<E> {
        &self.h
    }

    /// Dimension vector `(d0, d1)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.m0.rows(), self.m1.rows())
    }

    /// `(g0 M0 g0^-1, g1 M1 g1^-1, g0 h g1^-1)`.
    pub fn act<F: Field<Elem = E>>(&self, f: &F, g0: &Matrix<E>, g1: &Matrix<E>) -> Result<Self> {
        let g0i = linalg::invert(f, g0)?;
        let g1i = linalg::invert(f, g1)?;
        Ok(Self {
            m: self.m,
            m0: g0.mul(f, &self.m0)?.mul(f, &g0i)?,
            m1: g1.mul(f, &self.m1)?.mul(f, &g1i)?,
            h: g0.mul(f, &self.h)?.mul(f, &g1i)?,
        })
    }
}

/// The canonical module `M_{p,q}`.
///
/// Weakly indecomposable pairs get `(J_p, J_q, h_{p,q})`, using the mono form
/// when `p = q`; all other pairs get the direct sum over the canonical
/// decomposition.
pub fn build_canonical_module<F: Field>(f: &F, p: &Partition, q: &Partition) -> Result<AModule<F::Elem>> {
    let pair = PartitionPair::new(p.clone(), q.clone())?;
    let m = pair.bound();
    let h = match pair.classify() {
        PairType::MonoOnly | PairType::Both => mono_form(f, p, q)?,
        PairType::EpiOnly => epi_form(f, p, q)?,
        PairType::Neither => {
            let dec = canonical_decomposition(p, q)?;
            let mut acc = AModule::zero(f, m, 0, 0);
            for s in &dec.summands {
                acc = direct_sum(f, &acc, &build_canonical_module(f, &s.p, &s.q)?)?;
            }
            return Ok(acc);
        }
    };
    Ok(AModule {
        m,
        m0: p.jordan_matrix(f),
        m1: q.jordan_matrix(f),
        h,
    })
}

fn offsets(p: &Partition) -> Vec<usize> {
    let mut out = vec![0];
    for &x in p.parts() {
        out.push(out.last().unwrap() + x);
    }
    out
}

/// Diagonal blocks `X^{p_i - q_i}`, subdiagonal blocks `1`.
fn mono_form<F: Field>(f: &F, p: &Partition, q: &Partition) -> Result<Matrix<F::Elem>> {
    let (rp, cq) = (offsets(p), offsets(q));
    let mut h = Matrix::zeros(f, p.weight(), q.weight());
    for j in 1..=q.len() {
        let diag = PolyHom::monomial(f, q.part(j), p.part(j), p.part(j) - q.part(j))?;
        h.set_block(rp[j - 1], cq[j - 1], &diag.matrix(f));
        if j < p.len() {
            let sub = PolyHom::monomial(f, q.part(j), p.part(j + 1), 0)?;
            h.set_block(rp[j], cq[j - 1], &sub.matrix(f));
        }
    }
    Ok(h)
}

/// Diagonal blocks `1`, superdiagonal blocks `X^{p_i - q_{i+1}}`.
fn epi_form<F: Field>(f: &F, p: &Partition, q: &Partition) -> Result<Matrix<F::Elem>> {
    let (rp, cq) = (offsets(p), offsets(q));
    let mut h = Matrix::zeros(f, p.weight(), q.weight());
    for i in 1..=p.len() {
        let diag = PolyHom::monomial(f, q.part(i), p.part(i), 0)?;
        h.set_block(rp[i - 1], cq[i - 1], &diag.matrix(f));
        if i < q.len() {
            let sup = PolyHom::monomial(f, q.part(i + 1), p.part(i), p.part(i) - q.part(i + 1))?;
            h.set_block(rp[i - 1], cq[i], &sup.matrix(f));
        }
    }
    Ok(h)
}

pub fn direct_sum<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Result<AModule<F::Elem>> {
    if a.m != b.m {
        return Err(Error::InvalidModule(format!("direct sum of modules with m = {} and {}", a.m, b.m)));
    }
    Ok(AModule {
        m: a.m,
        m0: Matrix::block_diag(f, &[&a.m0, &b.m0]),
        m1: Matrix::block_diag(f, &[&a.m1, &b.m1]),
        h: Matrix::block_diag(f, &[&a.h, &b.h]),
    })
}

/// `(M1^T, M0^T, h^T)`.
pub fn dual<E: Clone + PartialEq>(a: &AModule<E>) -> AModule<E> {
    AModule {
        m: a.m,
        m0: a.m1.transpose(),
        m1: a.m0.transpose(),
        h: a.h.transpose(),
    }
}

/// Rows of a homogeneous linear system whose unknowns are several matrices
/// laid out one after another, each row-major.
struct System<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
}

/// An unknown matrix block `X` of shape `rows x cols` starting at `offset`.
#[derive(Clone, Copy)]
struct Var {
    offset: usize,
    rows: usize,
    cols: usize,
}

impl<E: Clone + PartialEq> System<E> {
    fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    /// Appends the `r x c` equations `sum_k sign_k * P_k X_k Q_k = 0`.
    fn add<F: Field<Elem = E>>(&mut self, f: &F, r: usize, c: usize, terms: &[(Var, &Matrix<E>, &Matrix<E>, bool)]) {
        let start = self.rows.len();
        self.rows.extend((0..r * c).map(|_| vec![f.zero(); self.ncols]));
        for &(var, pm, qm, negate) in terms {
            for i in 0..r {
                for a in 0..var.rows {
                    let pa = pm.get(i, a);
                    if f.is_zero(pa) {
                        continue;
                    }
                    for b in 0..var.cols {
                        for j in 0..c {
                            let qb = qm.get(b, j);
                            if f.is_zero(qb) {
                                continue;
                            }
                            let coeff = f.mul(pa, qb);
                            let cell = &mut self.rows[start + i * c + j][var.offset + a * var.cols + b];
                            *cell = if negate { f.sub(cell, &coeff) } else { f.add(cell, &coeff) };
                        }
                    }
                }
            }
        }
    }

    fn matrix(self) -> Matrix<E> {
        Matrix::from_rows(self.ncols, self.rows).expect("rows have ncols entries")
    }
}

fn unflatten<E: Clone>(v: &[E], var: Var) -> Matrix<E> {
    Matrix::new(var.rows, var.cols, v[var.offset..var.offset + var.rows * var.cols].to_vec()).expect("block size")
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace<E> {
    pub basis: Vec<(Matrix<E>, Matrix<E>)>,
}

impl<E> HomSpace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_same_m<E>(a: &AModule<E>, b: &AModule<E>) -> Result<()> {
    if a.m != b.m {
        return Err(Error::InvalidModule(format!("modules over m = {} and m = {}", a.m, b.m)));
    }
    Ok(())
}

/// The linear system cutting out `Hom(M, N)` in the unknowns `(f0, f1)`.
fn hom_system<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> (Matrix<F::Elem>, Var, Var) {
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let f0 = Var { offset: 0, rows: d0n, cols: d0m };
    let f1 = Var { offset: d0n * d0m, rows: d1n, cols: d1m };
    let mut sys = System::new(d0n * d0m + d1n * d1m);
    let (i0n, i1n) = (Matrix::identity(f, d0n), Matrix::identity(f, d1n));
    let (i0m, i1m) = (Matrix::identity(f, d0m), Matrix::identity(f, d1m));
    sys.add(f, d0n, d0m, &[(f0, &i0n, &a.m0, false), (f0, &b.m0, &i0m, true)]);
    sys.add(f, d1n, d1m, &[(f1, &i1n, &a.m1, false), (f1, &b.m1, &i1m, true)]);
    sys.add(f, d0n, d1m, &[(f0, &i0n, &a.h, false), (f1, &b.h, &i1m, true)]);
    (sys.matrix(), f0, f1)
}

pub fn hom_basis<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Result<HomSpace<F::Elem>> {
    check_same_m(a, b)?;
    let (sys, f0, f1) = hom_system(f, a, b);
    let basis = linalg::nullspace_basis(f, &sys)
        .into_iter()
        .map(|v| (unflatten(&v, f0), unflatten(&v, f1)))
        .collect();
    Ok(HomSpace { basis })
}

/// `dim Hom(M, N)` without materialising the basis.
pub fn hom_dim<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Result<usize> {
    check_same_m(a, b)?;
    let (sys, _, _) = hom_system(f, a, b);
    Ok(sys.cols() - linalg::rank(f, &sys))
}

pub fn end_dim<F: Field>(f: &F, a: &AModule<F::Elem>) -> Result<usize> {
    hom_dim(f, a, a)
}

/// `dim Ext^1(M, N)`, counting extensions `0 -> N -> E -> M -> 0`.
///
/// Cocycles are the upper-right blocks `(z0, z1, w)` that make the block
/// upper triangular triple `E` a module; coboundaries come from conjugating
/// by unipotent block matrices.
pub fn ext1_dim<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Result<usize> {
    check_same_m(a, b)?;
    let cocycles = cocycle_system(f, a, b);
    let dim_z = cocycles.cols() - linalg::rank(f, &cocycles);
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let dim_b = d0m * d0n + d1m * d1n - hom_dim(f, a, b)?;
    Ok(dim_z - dim_b)
}

/// Linear conditions on `(z0, z1, w)`; unknown order is `z0`, `z1`, `w`.
pub(crate) fn cocycle_system<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Matrix<F::Elem> {
    let (d0m, d1m) = a.dims();
    let (d0n, d1n) = b.dims();
    let z0 = Var { offset: 0, rows: d0n, cols: d0m };
    let z1 = Var { offset: d0n * d0m, rows: d1n, cols: d1m };
    let w = Var { offset: d0n * d0m + d1n * d1m, rows: d0n, cols: d1m };
    let mut sys = System::new(w.offset + d0n * d1m);
    let m = a.m;
    let powers = |x: &Matrix<F::Elem>| -> Vec<Matrix<F::Elem>> {
        let mut out = vec![Matrix::identity(f, x.rows())];
        for _ in 1..m {
            let next = out.last().unwrap().mul(f, x).expect("square");
            out.push(next);
        }
        out
    };
    let (pn0, pm0, pn1, pm1) = (powers(&b.m0), powers(&a.m0), powers(&b.m1), powers(&a.m1));
    let t0: Vec<_> = (0..m).map(|i| (z0, &pn0[i], &pm0[m - 1 - i], false)).collect();
    sys.add(f, d0n, d0m, &t0);
    let t1: Vec<_> = (0..m).map(|i| (z1, &pn1[i], &pm1[m - 1 - i], false)).collect();
    sys.add(f, d1n, d1m, &t1);
    let (i0n, i1m) = (Matrix::identity(f, d0n), Matrix::identity(f, d1m));
    sys.add(
        f,
        d0n,
        d1m,
        &[
            (w, &b.m0, &i1m, false),
            (z0, &i0n, &a.h, false),
            (w, &i0n, &a.m1, true),
            (z1, &b.h, &i1m, true),
        ],
    );
    sys.matrix()
}

/// Endomorphism basis as block-diagonal `(d0 + d1)`-square matrices.
fn end_algebra<F: Field>(f: &F, a: &AModule<F::Elem>) -> Result<Vec<Matrix<F::Elem>>> {
    Ok(hom_basis(f, a, a)?
        .basis
        .into_iter()
        .map(|(f0, f1)| Matrix::block_diag(f, &[&f0, &f1]))
        .collect())
}

/// `End(M)` is local, decided by the radical of the trace form, which in
/// characteristic zero is the Jacobson radical.
pub fn is_indecomposable_module<F: Field>(f: &F, a: &AModule<F::Elem>) -> Result<bool> {
    if a.dims() == (0, 0) {
        return Err(Error::ZeroModule);
    }
    if f.characteristic() != 0 {
        return Err(Error::UnsupportedField(f.characteristic()));
    }
    let basis = end_algebra(f, a)?;
    let n = basis.len();
    let trace_of_product = |x: &Matrix<F::Elem>, y: &Matrix<F::Elem>| {
        let mut acc = f.zero();
        for r in 0..x.rows() {
            for c in 0..x.cols() {
                let (u, v) = (x.get(r, c), y.get(c, r));
                if !f.is_zero(u) && !f.is_zero(v) {
                    acc = f.add(&acc, &f.mul(u, v));
                }
            }
        }
        acc
    };
    let mut gram = Matrix::zeros(f, n, n);
    for k in 0..n {
        for l in k..n {
            let t = trace_of_product(&basis[k], &basis[l]);
            gram.set(l, k, t.clone());
            gram.set(k, l, t);
        }
    }
    let radical = n - linalg::rank(f, &gram);
    Ok(n - radical == 1)
}

/// Settings for the randomized isomorphism search.
#[derive(Clone, Copy, Debug)]
pub struct IsoSearch {
    /// Random combinations tried after the structured ones.
    pub attempts: usize,
    pub seed: u64,
}

impl Default for IsoSearch {
    fn default() -> Self {
        Self { attempts: 32, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    /// Set when every deterministic precheck passed but no invertible
    /// homomorphism was found, so a negative answer may be wrong.
    pub probabilistic_negative: bool,
}

pub fn are_isomorphic<F: Field>(f: &F, a: &AModule<F::Elem>, b: &AModule<F::Elem>) -> Result<bool> {
    Ok(isomorphism_search(f, a, b, IsoSearch::default())?.isomorphic)
}

/// Looks for an invertible element of `Hom(M, N)`. Positive answers are
/// certain; negatives after the prechecks are only probable.
pub fn isomorphism_search<F: Field>(
    f: &F,
    a: &AModule<F::Elem>,
    b: &AModule<F::Elem>,
    cfg: IsoSearch,
) -> Result<IsoOutcome> {
    check_same_m(a, b)?;
    let no = IsoOutcome { isomorphic: false, probabilistic_negative: false };
    if a.dims() != b.dims() {
        return Ok(no);
    }
    let e = end_dim(f, a)?;
    if e != end_dim(f, b)? || hom_dim(f, b, a)? != e {
        return Ok(no);
    }
    let hom = hom_basis(f, a, b)?;
    if hom.dim() != e {
        return Ok(no);
    }
    let invertible = |c: &[F::Elem]| -> bool {
        let f0 = lincomb(f, c, hom.basis.iter().map(|x| &x.0), a.dims().0, a.dims().0);
        let f1 = lincomb(f, c, hom.basis.iter().map(|x| &x.1), a.dims().1, a.dims().1);
        linalg::is_invertible(f, &f0) && linalg::is_invertible(f, &f1)
    };
    let n = hom.dim();
    if n == 0 {
        // only zero modules have an empty hom space to themselves
        return Ok(IsoOutcome { isomorphic: a.dims() == (0, 0), probabilistic_negative: false });
    }
    let unit = |k: usize| (0..n).map(|i| if i == k { f.one() } else { f.zero() }).collect::<Vec<_>>();
    let structured = (0..n).map(unit).chain(std::iter::once(vec![f.one(); n]));
    for c in structured {
        if invertible(&c) {
            return Ok(IsoOutcome { isomorphic: true, probabilistic_negative: false });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.attempts {
        let c: Vec<_> = (0..n).map(|_| f.random(&mut rng)).collect();
        if invertible(&c) {
            return Ok(IsoOutcome { isomorphic: true, probabilistic_negative: false });
        }
    }
    Ok(IsoOutcome { isomorphic: false, probabilistic_negative: true })
}

fn lincomb<'a, F: Field>(
    f: &F,
    coeffs: &[F::Elem],
    mats: impl Iterator<Item = &'a Matrix<F::Elem>>,
    rows: usize,
    cols: usize,
) -> Matrix<F::Elem>
where
    F::Elem: 'a,
{
    let mut acc = Matrix::zeros(f, rows, cols);
    for (c, x) in coeffs.iter().zip(mats) {
        if !f.is_zero(c) {
            acc = acc.add(f, &x.scale(f, c)).expect("same shape");
        }
    }
    acc
}

/// `h` is injective.
pub fn is_gorenstein_projective<F: Field>(f: &F, a: &AModule<F::Elem>) -> bool {
    linalg::rank(f, &a.h) == a.dims().1
}

/// A random point of the stratum `S_{p,q}`, reproducible from `seed`.
pub fn sample_stratum<F: Field>(f: &F, p: &Partition, q: &Partition, seed: u64) -> Result<AModule<F::Elem>> {
    let pair = PartitionPair::new(p.clone(), q.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conj = |j: &Matrix<F::Elem>, rng: &mut ChaCha8Rng| -> Result<Matrix<F::Elem>> {
        let g = linalg::random_invertible(f, j.rows(), rng);
        g.mul(f, j)?.mul(f, &linalg::invert(f, &g)?)
    };
    let m0 = conj(&p.jordan_matrix(f), &mut rng)?;
    let m1 = conj(&q.jordan_matrix(f), &mut rng)?;
    let (d0, d1) = pair.dims();
    let v = Var { offset: 0, rows: d0, cols: d1 };
    let mut sys = System::new(d0 * d1);
    sys.add(
        f,
        d0,
        d1,
        &[(v, &m0, &Matrix::identity(f, d1), false), (v, &Matrix::identity(f, d0), &m1, true)],
    );
    let kernel = linalg::nullspace_basis(f, &sys.matrix());
    let coeffs: Vec<_> = kernel.iter().map(|_| f.random(&mut rng)).collect();
    let h = unflatten(&linalg::combine(f, &coeffs, &kernel, d0 * d1), v);
    Ok(AModule { m: pair.bound(), m0, m1, h })
}

/// Jordan types of the two components.
pub fn stratum_of<F: Field>(f: &F, a: &AModule<F::Elem>) -> Result<PartitionPair> {
    PartitionPair::new(jordan_type(f, &a.m0, a.m)?, jordan_type(f, &a.m1, a.m)?)
}

/// Serialized form: entries are strings, the field is recorded alongside.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    #[serde(flatten)]
    pub field: FieldDescriptor,
    pub m: usize,
    pub d0: usize,
    pub d1: usize,
    #[serde(rename = "M0")]
    pub m0: Vec<Vec<String>>,
    #[serde(rename = "M1")]
    pub m1: Vec<Vec<String>>,
    pub h: Vec<Vec<String>>,
}

impl ModuleJson {
    pub fn new<F: Field>(f: &F, a: &AModule<F::Elem>) -> Self {
        let rows = |x: &Matrix<F::Elem>| -> Vec<Vec<String>> {
            (0..x.rows()).map(|r| x.row(r).iter().map(|e| f.format(e)).collect()).collect()
        };
        let (d0, d1) = a.dims();
        Self {
            field: f.descriptor(),
            m: a.m,
            d0,
            d1,
            m0: rows(&a.m0),
            m1: rows(&a.m1),
            h: rows(&a.h),
        }
    }
}
