//! C4-free edge colourings of complete graphs from Sidon sets.
//!
//! The Bose construction gives a Sidon set of size `q` in `Z_{q^2-1}` from
//! the quadratic extension `GF(q^2)`. Its `q - 1` multiplicative translates
//! by `GF(q)^*` tile every residue except the multiples of `q + 1`, which
//! are split greedily into further Sidon sets. Colouring the edge `{i, j}`
//! of `K_t` (for `t <= q^2 - 1`) by the class containing `i + j` leaves
//! every class C4-free: a 4-cycle `w x y z` would give
//! `(w + x) + (y + z) = (x + y) + (z + w)`, and the Sidon property then
//! forces `w = y` or `x = z`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::gen::complete_graph;
use crate::graph::{EdgeColouring, Graph, Vertex};
use crate::oracle::{c4_free_colouring_search, phi_lower_bound};
use crate::verify::{find_c4, is_sidon, verify_c4_free_colouring};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `q` with `q^2 - 1 >= min_msize`.
pub fn next_prime_with(min_msize: u64) -> u64 {
    let mut q = 2;
    while !is_prime(q) || q * q - 1 < min_msize {
        q += 1;
    }
    q
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// An element `a + b w` of `GF(q^2)`.
pub type Elem = (u64, u64);

/// `GF(q^2) = GF(q)[w] / (w^2 - trace w - norm)` for a prime `q`.
///
/// For odd `q` the trace is zero and `norm` is the least quadratic
/// non-residue. `GF(4)` uses `w^2 = w + 1`.
#[derive(Clone, Debug)]
pub struct QuadExtField {
    q: u64,
    nonresidue: u64,
    trace: u64,
    primitive: Elem,
}

impl QuadExtField {
    pub fn new(q: u64) -> Result<Self, AlgebraError> {
        if !is_prime(q) {
            return Err(AlgebraError::NotPrime(q));
        }
        let (nonresidue, trace) = if q == 2 {
            (1, 1)
        } else {
            let r = (2..q)
                .find(|&r| pow_mod(r, (q - 1) / 2, q) == q - 1)
                .ok_or(AlgebraError::Internal("no quadratic non-residue"))?;
            (r, 0)
        };
        let mut field = QuadExtField {
            q,
            nonresidue,
            trace,
            primitive: (0, 1),
        };
        let order = q * q - 1;
        let factors = prime_factors(order);
        field.primitive = (1..q)
            .flat_map(|b| (0..q).map(move |a| (a, b)))
            .find(|&x| factors.iter().all(|&p| field.pow(x, order / p) != (1, 0)))
            .ok_or(AlgebraError::Internal("no primitive element"))?;
        Ok(field)
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// A generator of the multiplicative group, of order `q^2 - 1`.
    #[inline]
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// Order of the multiplicative group.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.q * self.q - 1
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        ((x.0 + y.0) % self.q, (x.1 + y.1) % self.q)
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let q = self.q;
        let bd = x.1 * y.1 % q;
        (
            (x.0 * y.0 + bd * self.nonresidue) % q,
            (x.0 * y.1 + x.1 * y.0 + bd * self.trace) % q,
        )
    }

    pub fn pow(&self, mut x: Elem, mut e: u64) -> Elem {
        let mut r = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order of a nonzero element, by repeated multiplication.
    pub fn order_of(&self, x: Elem) -> u64 {
        assert!(x != (0, 0), "zero has no multiplicative order");
        let mut y = x;
        let mut k = 1;
        while y != (1, 0) {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Discrete logarithms base the primitive element, indexed by
    /// `a + b q`; the entry for zero is `u64::MAX`.
    pub fn log_table(&self) -> Vec<u64> {
        let q = self.q;
        let mut table = vec![u64::MAX; (q * q) as usize];
        let mut x = (1, 0);
        for k in 0..self.group_order() {
            table[(x.0 + x.1 * q) as usize] = k;
            x = self.mul(x, self.primitive);
        }
        table
    }
}

/// Bose's Sidon set `{ log(theta + a) : a in GF(q) }` in `Z_{q^2-1}`,
/// sorted.
pub fn bose_sidon(field: &QuadExtField) -> Vec<u64> {
    bose_with_logs(field, &field.log_table())
}

fn bose_with_logs(field: &QuadExtField, logs: &[u64]) -> Vec<u64> {
    let q = field.characteristic();
    let theta = field.primitive();
    let mut set: Vec<u64> = (0..q)
        .map(|a| {
            let x = field.add(theta, (a, 0));
            logs[(x.0 + x.1 * q) as usize]
        })
        .collect();
    set.sort_unstable();
    set
}

/// A partition of `Z_m` (`m = q^2 - 1`) into Sidon sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidonPartition {
    q: u64,
    modulus: u64,
    classes: Vec<Vec<u64>>,
}

impl SidonPartition {
    #[inline]
    pub fn prime(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The classes: the `q - 1` Bose translates first, then the classes
    /// covering the multiples of `q + 1`.
    #[inline]
    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    /// Class index of every residue.
    pub fn class_of_residue(&self) -> Vec<u32> {
        let mut out = vec![u32::MAX; self.modulus as usize];
        for (i, class) in self.classes.iter().enumerate() {
            for &r in class {
                out[r as usize] = i as u32;
            }
        }
        out
    }

    /// Bound on the class count checked before a partition is returned.
    pub fn class_bound(q: u64) -> usize {
        (q - 1) as usize + two_sqrt_budget(q as usize) as usize + 2
    }
}

/// Builds and verifies the Sidon partition of `Z_{q^2-1}`.
pub fn sidon_partition(q: u64) -> Result<SidonPartition, AlgebraError> {
    let field = QuadExtField::new(q)?;
    let m = field.group_order();
    let logs = field.log_table();
    let base = bose_with_logs(&field, &logs);
    // log u for u in GF(q)^* runs over the multiples of q + 1.
    let step = q + 1;
    let mut classes: Vec<Vec<u64>> = (0..q - 1)
        .map(|k| {
            let mut c: Vec<u64> = base.iter().map(|&b| (b + k * step) % m).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut leftover: Vec<Vec<u64>> = Vec::new();
    for k in 0..q - 1 {
        let r = k * step;
        let slot = leftover.iter().position(|c| {
            let mut trial = c.clone();
            trial.push(r);
            is_sidon(&trial, m)
        });
        match slot {
            Some(i) => leftover[i].push(r),
            None => leftover.push(vec![r]),
        }
    }
    classes.extend(leftover);

    let mut hits = vec![0u8; m as usize];
    for class in &classes {
        for &r in class {
            hits[r as usize] = hits[r as usize].saturating_add(1);
        }
        if !is_sidon(class, m) {
            return Err(AlgebraError::Internal("class is not a Sidon set"));
        }
    }
    if hits.iter().any(|&h| h != 1) {
        return Err(AlgebraError::Internal("classes do not partition the residues"));
    }
    if classes.len() > SidonPartition::class_bound(q) {
        return Err(AlgebraError::Internal("too many classes"));
    }
    Ok(SidonPartition {
        q,
        modulus: m,
        classes,
    })
}

/// How a [`CompleteColouring`] assigns classes.
#[derive(Clone, Debug, PartialEq, Eq)]
enum ClassMap {
    /// Class of `{i, j}` is `by_residue[(i + j) mod m]`.
    Sum { modulus: u64, by_residue: Vec<u32> },
    /// Explicit `t x t` table.
    Table(Vec<u32>),
}

/// A C4-free edge colouring of `K_t` with constant-time pair lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteColouring {
    t: usize,
    classes: u32,
    prime: Option<u64>,
    map: ClassMap,
    budget_met: bool,
}

impl CompleteColouring {
    #[inline]
    pub fn order(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn class_count(&self) -> u32 {
        self.classes
    }

    /// The prime behind the algebraic construction, if it was used.
    #[inline]
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    /// Whether the class count stayed within the requested budget.
    #[inline]
    pub fn budget_met(&self) -> bool {
        self.budget_met
    }

    /// Class of the edge `{i, j}`, `i != j`, both below `t`.
    #[inline]
    pub fn class(&self, i: Vertex, j: Vertex) -> u32 {
        debug_assert!(i != j && (i as usize) < self.t && (j as usize) < self.t);
        match &self.map {
            ClassMap::Sum { modulus, by_residue } => {
                by_residue[((i as u64 + j as u64) % modulus) as usize]
            }
            ClassMap::Table(table) => table[i as usize * self.t + j as usize],
        }
    }

    /// Residue-to-class map for sum colourings.
    pub fn residue_classes(&self) -> Option<(u64, &[u32])> {
        match &self.map {
            ClassMap::Sum { modulus, by_residue } => Some((*modulus, by_residue)),
            ClassMap::Table(_) => None,
        }
    }

    /// Materialises the colouring on [`complete_graph`]`(t)`.
    pub fn to_edge_colouring(&self) -> (Graph, EdgeColouring) {
        let g = complete_graph(self.t);
        let colours = g.edges().iter().map(|&(u, v)| self.class(u, v)).collect();
        let col = EdgeColouring::new(colours).expect("class ids are contiguous");
        (g, col)
    }
}

/// Options for [`complete_c4_free_colouring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompleteOptions {
    /// Allowed excess over `ceil(2 sqrt(t))` before trying a larger prime.
    pub budget_slack: u32,
    /// Further primes to try when the budget is missed.
    pub prime_retries: u32,
    /// Orders up to this use exact search instead of the algebra.
    pub exact_below: usize,
}

impl Default for CompleteOptions {
    fn default() -> Self {
        CompleteOptions {
            budget_slack: 0,
            prime_retries: 2,
            exact_below: SMALL_ORDER,
        }
    }
}

/// Orders handled by exact search by default.
pub const SMALL_ORDER: usize = 8;

/// `ceil(2 sqrt(t))`, computed exactly.
pub fn two_sqrt_budget(t: usize) -> u32 {
    // Smallest b with b^2 >= 4t.
    let target = 4 * t as u64;
    let mut b = libm::sqrt(target as f64) as u64;
    while b * b < target {
        b += 1;
    }
    while b > 0 && (b - 1) * (b - 1) >= target {
        b -= 1;
    }
    b as u32
}

/// C4-free edge colouring of `K_t`.
///
/// Small orders are solved exactly by search starting from the clique lower
/// bound. Larger orders use the Sidon partition of the smallest prime `q`
/// with `q^2 - 1 >= t`; unused classes are dropped and the rest renumbered.
/// If that misses `ceil(2 sqrt(t)) + budget_slack` classes, up to
/// `prime_retries` larger primes are tried and the best result is kept.
pub fn complete_c4_free_colouring(t: usize, opts: CompleteOptions) -> CompleteColouring {
    let budget = two_sqrt_budget(t) + opts.budget_slack;
    if t <= opts.exact_below.max(3) {
        return exact_complete(t, budget);
    }
    let mut q = next_prime_with(t as u64);
    let mut best: Option<CompleteColouring> = None;
    for _ in 0..=opts.prime_retries {
        let partition = sidon_partition(q).expect("Sidon partition failed its own checks");
        let c = from_partition(t, &partition, budget);
        let better = best.as_ref().is_none_or(|b| c.classes < b.classes);
        if better {
            best = Some(c);
        }
        if best.as_ref().unwrap().budget_met {
            break;
        }
        q += 1;
        while !is_prime(q) {
            q += 1;
        }
    }
    best.unwrap()
}

fn from_partition(t: usize, partition: &SidonPartition, budget: u32) -> CompleteColouring {
    let m = partition.modulus();
    let raw = partition.class_of_residue();
    // Sums of distinct vertices below t are 1..=2t-3.
    let mut used = vec![false; partition.classes().len()];
    for s in 1..(2 * t as u64).saturating_sub(2) {
        used[raw[(s % m) as usize] as usize] = true;
    }
    let mut renumber = vec![u32::MAX; used.len()];
    let mut next = 0;
    for (i, &u) in used.iter().enumerate() {
        if u {
            renumber[i] = next;
            next += 1;
        }
    }
    let by_residue = raw.iter().map(|&c| renumber[c as usize]).collect();
    CompleteColouring {
        t,
        classes: next,
        prime: Some(partition.prime()),
        map: ClassMap::Sum {
            modulus: m,
            by_residue,
        },
        budget_met: next <= budget,
    }
}

fn exact_complete(t: usize, budget: u32) -> CompleteColouring {
    let g = complete_graph(t);
    let start = phi_lower_bound(t.saturating_sub(1) as u64, None).max(1) as u32;
    let colours = (start..)
        .find_map(|k| c4_free_colouring_search(&g, k, u64::MAX).unwrap())
        .unwrap();
    let col = EdgeColouring::compacted(colours);
    assert!(
        verify_c4_free_colouring(&g, &col).unwrap().is_ok(),
        "exact search returned a colouring with a monochromatic C4"
    );
    let mut table = vec![u32::MAX; t * t];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        table[u as usize * t + v as usize] = col.colour(e);
        table[v as usize * t + u as usize] = col.colour(e);
    }
    CompleteColouring {
        t,
        classes: col.class_count(),
        prime: None,
        map: ClassMap::Table(table),
        budget_met: col.class_count() <= budget,
    }
}

/// The sum graph of one class restricted to `K_t`; C4-free when the class
/// is Sidon.
pub fn class_graph(colouring: &CompleteColouring, class: u32) -> Graph {
    let g = complete_graph(colouring.order());
    g.spanning_subgraph(|e| {
        let (u, v) = g.edge(e);
        colouring.class(u, v) == class
    })
    .0
}

/// Full check: every class of the materialised colouring is C4-free.
pub fn verify_complete(colouring: &CompleteColouring) -> bool {
    let (g, col) = colouring.to_edge_colouring();
    verify_c4_free_colouring(&g, &col).unwrap().is_ok()
        && (0..colouring.class_count()).all(|c| find_c4(&col.class_subgraph(&g, c)).is_none())
}
