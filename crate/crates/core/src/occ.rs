//! `Occ(m, n, r)`: the largest family of functions from an `m`-set to an
//! `n`-set, under equality, in which every member has radius at most `r`.
//!
//! Upper bounds come from the class-count inequality solved in closed form,
//! lower bounds from explicit constructions, and tiny instances can be settled
//! by exhaustive branch-and-bound over subfamilies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family_file::FamilyFile;
use crate::poset::{Budget, FiniteFunction, FunctionFamily, OrderKind, PosetError};
use crate::subset::{binomial, Combinations};

/// Largest number of class sizes materialized in a bound witness.
pub const MAX_WITNESS_LEN: u64 = 1 << 24;
/// Largest function space the exhaustive search will enumerate.
pub const MAX_SEARCH_SPACE: u64 = 64;
/// Largest function space materialized as a family.
pub const MAX_FULL_SPACE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OccError {
    #[error("invalid instance (m={m}, n={n}, r={r}): need m >= 1, n >= 1, r <= m")]
    InvalidInstance { m: usize, n: usize, r: usize },
    #[error("{0} does not fit in 64-bit arithmetic")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, OccError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccInstance {
    m: usize,
    n: usize,
    r: usize,
}

impl OccInstance {
    pub fn new(m: usize, n: usize, r: usize) -> Result<Self> {
        if m == 0 || n == 0 || r > m {
            return Err(OccError::InvalidInstance { m, n, r });
        }
        Ok(Self { m, n, r })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    fn pow(&self, e: usize, what: &str) -> Result<u64> {
        (self.n as u64)
            .checked_pow(e as u32)
            .ok_or_else(|| OccError::Overflow(format!("{what} = {}^{e}", self.n)))
    }

    /// `n^m`, the number of functions.
    pub fn space_size(&self) -> Result<u64> {
        self.pow(self.m, "n^m")
    }
}

/// Class-size multiplicities realizing the bound: `x[i - 1]` classes of size `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundWitness {
    pub p: u64,
    pub x: Vec<u64>,
}

impl BoundWitness {
    /// Checks `p = Σ i·x_i`, `Σ x_i <= n^r` and `p <= C(m, r)·x_1`.
    pub fn satisfies(&self, inst: &OccInstance) -> bool {
        let (Ok(classes), Some(c)) = (inst.pow(inst.r, "n^r"), binomial(inst.m as u64, inst.r as u64)) else {
            return false;
        };
        let total: u128 = self.x.iter().enumerate().map(|(i, &xi)| (i as u128 + 1) * xi as u128).sum();
        let count: u128 = self.x.iter().map(|&xi| xi as u128).sum();
        let x1 = self.x.first().copied().unwrap_or(0) as u128;
        total == self.p as u128 && count <= classes as u128 && (self.p as u128) <= c as u128 * x1
    }
}

/// Largest `t` with `t <= cap` expressible as a sum of at most `classes`
/// sizes drawn from `2..=max_size`.
fn fill_classes(classes: u64, max_size: u64, cap: u128) -> u128 {
    let most = classes as u128 * max_size as u128;
    match max_size {
        0 | 1 => 0,
        2 => 2 * (classes as u128).min(cap / 2),
        _ => {
            let t = most.min(cap);
            if t == 1 {
                0
            } else {
                t
            }
        }
    }
}

/// Spells out a fill of `t` as class multiplicities (index `i` = size `i + 1`).
fn spell_classes(x: &mut [u64], t: u128, max_size: u64) {
    if t == 0 {
        return;
    }
    let m = max_size as u128;
    let (q, rem) = (t / m, t % m);
    x[max_size as usize - 1] += q as u64;
    match rem {
        0 => {}
        1 => {
            // trade one full class for sizes max_size - 1 and 2
            x[max_size as usize - 1] -= 1;
            x[max_size as usize - 2] += 1;
            x[1] += 1;
        }
        k => x[k as usize - 1] += 1,
    }
}

/// The largest `p` admitted by the class-count inequality, with its witness.
///
/// For a fixed number `x_1` of singleton classes the remaining `n^r - x_1`
/// classes are best filled with the largest sizes available, so only the
/// one-dimensional maximization over `x_1` remains.
pub fn theorem_upper_bound(inst: &OccInstance) -> Result<BoundWitness> {
    inst.space_size()?;
    let classes = inst.pow(inst.r, "n^r")?;
    let max_size = inst.pow(inst.m - inst.r, "n^(m-r)")?;
    if max_size > MAX_WITNESS_LEN {
        return Err(OccError::Overflow(format!("bound witness of length {max_size}")));
    }
    let c = binomial(inst.m as u64, inst.r as u64).ok_or_else(|| OccError::Overflow("C(m, r)".into()))? as u128;
    let value = |x1: u64| -> u128 {
        let cap = (c - 1) * x1 as u128;
        x1 as u128 + fill_classes(classes - x1, max_size, cap)
    };
    let candidates: Vec<u64> = if classes <= 1 << 20 {
        (0..=classes).collect()
    } else {
        // the objective rises with slope C and falls with slope max_size - 1;
        // rounding only moves the crossing by less than one step
        let crossing = classes as u128 * max_size as u128 / (c + max_size as u128 - 1);
        let lo = (crossing as u64).saturating_sub(4);
        let hi = (crossing as u64).saturating_add(4).min(classes);
        (lo..=hi).chain([0, 1, 2, classes]).filter(|&x| x <= classes).collect()
    };
    let best_x1 = candidates
        .into_iter()
        .max_by(|&a, &b| value(a).cmp(&value(b)).then(b.cmp(&a)))
        .expect("at least one candidate");
    let p = value(best_x1);
    let p = u64::try_from(p).map_err(|_| OccError::Overflow("bound value".into()))?;
    let mut x = vec![0u64; max_size as usize];
    x[0] = best_x1;
    spell_classes(&mut x, (p - best_x1) as u128, max_size);
    Ok(BoundWitness { p, x })
}

fn family_from_words(n: usize, mut words: Vec<Vec<u32>>) -> Result<FunctionFamily> {
    words.sort();
    let m = words.first().map_or(0, Vec::len);
    let functions = words.into_iter().map(|w| FiniteFunction::new(w, n)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(FunctionFamily::new(m, n, functions, OrderKind::Equality)?)
}

/// For each letter pair `{u, v}` the words `uvu, vuv, uuv, vvu`, plus the `n`
/// constant words: `4·C(n, 2) + n` functions of radius at most 2 on 3 points.
pub fn construct_3n2(n: usize) -> Result<FunctionFamily> {
    if n < 2 {
        return Err(OccError::InvalidArgument(format!("construct_3n2 needs n >= 2, got {n}")));
    }
    let mut words = Vec::new();
    for u in 0..n as u32 {
        words.push(vec![u, u, u]);
        for v in u + 1..n as u32 {
            words.extend([vec![u, v, u], vec![v, u, v], vec![u, u, v], vec![v, v, u]]);
        }
    }
    family_from_words(n, words)
}

/// The `2m` words `a b^(i-1) a^(m-i)` for `i = 1..=m` and their `a <-> b` swaps.
pub fn construct_m22(m: usize) -> Result<FunctionFamily> {
    if m < 2 {
        return Err(OccError::InvalidArgument(format!("construct_m22 needs m >= 2, got {m}")));
    }
    let mut words = Vec::with_capacity(2 * m);
    for i in 1..=m {
        let w: Vec<u32> = (0..m).map(|k| u32::from(k >= 1 && k < i)).collect();
        words.push(w.iter().map(|&v| 1 - v).collect());
        words.push(w);
    }
    family_from_words(2, words)
}

/// The `m(n-1)` words that are the base letter except at one position.
pub fn construct_mn1(m: usize, n: usize) -> Result<FunctionFamily> {
    if m < 1 || n < 2 {
        return Err(OccError::InvalidArgument(format!("construct_mn1 needs m >= 1 and n >= 2, got m={m}, n={n}")));
    }
    let mut words = Vec::with_capacity(m * (n - 1));
    for j in 0..m {
        for c in 1..n as u32 {
            let mut w = vec![0u32; m];
            w[j] = c;
            words.push(w);
        }
    }
    family_from_words(n, words)
}

/// Every function from an `m`-set to an `n`-set.
pub fn full_space(m: usize, n: usize) -> Result<FunctionFamily> {
    let size = (n as u64).checked_pow(m as u32).filter(|&s| s <= MAX_FULL_SPACE);
    let size = size.ok_or_else(|| OccError::Overflow(format!("function space {n}^{m}")))?;
    let words = (0..size).map(|code| decode_word(code, m, n)).collect();
    family_from_words(n, words)
}

fn decode_word(mut code: u64, m: usize, n: usize) -> Vec<u32> {
    let mut w = vec![0u32; m];
    for slot in w.iter_mut().rev() {
        *slot = (code % n as u64) as u32;
        code /= n as u64;
    }
    w
}

/// True iff every member has radius at most `r`. The family must use equality.
pub fn verify_family_radius(family: &FunctionFamily, r: usize) -> Result<bool> {
    if *family.order() != OrderKind::Equality {
        return Err(OccError::InvalidArgument("radius verification needs the equality order".into()));
    }
    for f in 0..family.len() {
        if family.radius(f)?.value > r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the exhaustive subfamily search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: FunctionFamily,
    pub complete: bool,
    pub nodes: u64,
}

/// Backtracking over the lexicographically ordered function space. A function
/// whose addition breaks the radius condition is dropped from the whole
/// subtree, since the condition is inherited by subfamilies.
struct FamilySearch {
    words: Vec<Vec<u32>>,
    // keys[f * subsets + j]: restriction of word f to the j-th r-subset
    keys: Vec<usize>,
    subsets: usize,
    counts: Vec<u32>,
    per_subset: usize,
    family: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    nodes: u64,
    budget: u64,
    stopped: bool,
}

impl FamilySearch {
    fn new(inst: &OccInstance, target: usize, budget: Budget) -> Result<Self> {
        let size = inst.space_size()?;
        let (m, n, r) = (inst.m, inst.n, inst.r);
        let words: Vec<Vec<u32>> = (0..size).map(|c| decode_word(c, m, n)).collect();
        let subsets: Vec<u64> = Combinations::new(m, r).collect();
        let per_subset = n.pow(r as u32);
        let mut keys = Vec::with_capacity(words.len() * subsets.len());
        for w in &words {
            for &s in &subsets {
                let key = (0..m).filter(|&x| s >> x & 1 == 1).fold(0usize, |k, x| k * n + w[x] as usize);
                keys.push(key);
            }
        }
        Ok(Self {
            counts: vec![0; subsets.len() * per_subset],
            subsets: subsets.len(),
            per_subset,
            words,
            keys,
            family: Vec::new(),
            best: Vec::new(),
            target,
            nodes: 0,
            budget: budget.0,
            stopped: false,
        })
    }

    fn slot(&self, f: usize, j: usize) -> usize {
        j * self.per_subset + self.keys[f * self.subsets + j]
    }

    fn add(&mut self, f: usize) {
        for j in 0..self.subsets {
            let s = self.slot(f, j);
            self.counts[s] += 1;
        }
        self.family.push(f);
    }

    fn remove(&mut self) {
        let f = self.family.pop().expect("nonempty family");
        for j in 0..self.subsets {
            let s = self.slot(f, j);
            self.counts[s] -= 1;
        }
    }

    /// Every member is alone in its class for some r-subset.
    fn valid(&self) -> bool {
        self.family.iter().all(|&g| (0..self.subsets).any(|j| self.counts[self.slot(g, j)] == 1))
    }

    fn compatible(&mut self, f: usize) -> bool {
        self.add(f);
        let ok = self.valid();
        self.remove();
        ok
    }

    fn descend(&mut self, candidates: &[usize]) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.stopped = true;
            return;
        }
        if self.family.len() > self.best.len() {
            self.best = self.family.clone();
            if self.best.len() >= self.target {
                self.stopped = true;
                return;
            }
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if self.stopped || self.family.len() + candidates.len() - pos <= self.best.len() {
                return;
            }
            self.add(c);
            let rest: Vec<usize> = candidates[pos + 1..].to_vec();
            let rest: Vec<usize> = rest.into_iter().filter(|&d| self.compatible(d)).collect();
            self.descend(&rest);
            self.remove();
        }
    }
}

/// Maximum family with all radii at most `r`, by exhaustive search. With
/// `stop_at_bound` the search ends as soon as it reaches the class-count bound.
pub fn search_occ(inst: &OccInstance, budget: Budget, stop_at_bound: bool) -> Result<SearchOutcome> {
    let size = inst.space_size()?;
    if size > MAX_SEARCH_SPACE {
        return Err(OccError::InvalidArgument(format!("function space of {size} exceeds the search limit {MAX_SEARCH_SPACE}")));
    }
    let upper = theorem_upper_bound(inst)?.p as usize;
    let target = if stop_at_bound { upper } else { usize::MAX };
    let mut search = FamilySearch::new(inst, target, budget)?;
    let all: Vec<usize> = (0..size as usize).collect();
    let singles: Vec<usize> = all.into_iter().filter(|&f| search.compatible(f)).collect();
    search.descend(&singles);
    let complete = !search.stopped || search.best.len() >= upper;
    let words = search.best.iter().map(|&f| search.words[f].clone()).collect();
    Ok(SearchOutcome { best: family_from_words(inst.n, words)?, complete, nodes: search.nodes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// Lower construction meets the upper bound.
    Bounds,
    /// Exhaustive search completed.
    Search,
    /// Only an interval is known.
    Interval,
}

/// Interval `[lower, upper]` for `Occ(m, n, r)` with witnesses for both ends.
#[derive(Debug, Clone)]
pub struct OccCertificate {
    pub instance: OccInstance,
    pub lower: u64,
    pub witness_family: FunctionFamily,
    pub upper: BoundWitness,
    pub exact: Option<u64>,
    pub method: CertificateMethod,
}

/// Serialized form of [`OccCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub lower: u64,
    pub upper: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u64>,
    pub method: CertificateMethod,
    pub witness_family: FamilyFile,
    pub witness_x: Vec<u64>,
}

impl OccCertificate {
    pub fn document(&self) -> CertificateDocument {
        CertificateDocument {
            m: self.instance.m,
            n: self.instance.n,
            r: self.instance.r,
            lower: self.lower,
            upper: self.upper.p,
            exact: self.exact,
            method: self.method,
            witness_family: FamilyFile::from_family(&self.witness_family, letter_alphabet(self.instance.n)),
            witness_x: self.upper.x.clone(),
        }
    }
}

fn letter_alphabet(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
    } else {
        (0..n).map(|i| i.to_string()).collect()
    }
}

/// The largest verified construction available for the instance.
pub fn best_construction(inst: &OccInstance) -> Result<FunctionFamily> {
    let (m, n, r) = (inst.m, inst.n, inst.r);
    let mut options: Vec<FunctionFamily> = Vec::new();
    if r == m && inst.space_size().is_ok_and(|s| s <= MAX_FULL_SPACE) {
        options.push(full_space(m, n)?);
    }
    if m == 3 && r == 2 && n >= 2 {
        options.push(construct_3n2(n)?);
    }
    if n == 2 && m >= 2 && r >= 2 {
        options.push(construct_m22(m)?);
    }
    if r >= 1 && n >= 2 {
        options.push(construct_mn1(m, n)?);
    }
    options.push(family_from_words(n, vec![vec![0; m]])?);
    let mut best: Option<FunctionFamily> = None;
    for fam in options {
        if best.as_ref().is_some_and(|b| b.len() >= fam.len()) {
            continue;
        }
        if verify_family_radius(&fam, r)? {
            best = Some(fam);
        }
    }
    Ok(best.expect("a single function always qualifies"))
}

/// Certifies `Occ(m, n, r)` as exactly as the budget allows: constructions and
/// the class-count bound first, then exhaustive search when they disagree and
/// the function space is small.
pub fn exact_occ(inst: &OccInstance, budget: Budget) -> Result<OccCertificate> {
    let upper = theorem_upper_bound(inst)?;
    let mut witness = best_construction(inst)?;
    if witness.len() as u64 == upper.p {
        return Ok(OccCertificate {
            instance: *inst,
            lower: upper.p,
            witness_family: witness,
            exact: Some(upper.p),
            upper,
            method: CertificateMethod::Bounds,
        });
    }
    let mut exact = None;
    let mut method = CertificateMethod::Interval;
    if inst.space_size()? <= MAX_SEARCH_SPACE {
        let found = search_occ(inst, budget, true)?;
        if found.best.len() > witness.len() && verify_family_radius(&found.best, inst.r)? {
            witness = found.best;
        }
        if found.complete {
            exact = Some(witness.len() as u64);
            method = CertificateMethod::Search;
        }
    }
    Ok(OccCertificate { instance: *inst, lower: witness.len() as u64, witness_family: witness, upper, exact, method })
}
