//! Majorana operators of the trijunction and exact conjugation by exchange
//! operators.
//!
//! Every arm `k ∈ {1,2,3}` carries sites `j = 0..n`, each with two Majoranas
//! `γ^x_{kj}` and `γ^y_{kj}`. They square to one and pairwise anticommute, so a
//! monomial can always be brought to a canonical sorted form with a sign.
//!
//! An exchange operator `O_{kl} = (1 + γ_k γ_l)/√2` conjugates single
//! Majoranas as `γ_k ↦ −γ_l`, `γ_l ↦ γ_k`, leaving all others fixed. Since it
//! acts linearly on every factor of a monomial, conjugating a quadratic
//! Hamiltonian is exact bookkeeping on index pairs and signs.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orientation {
    X,
    Y,
}

impl Orientation {
    pub fn label(self) -> char {
        match self {
            Orientation::X => 'x',
            Orientation::Y => 'y',
        }
    }
}

/// One Majorana operator `γ^{orientation}_{arm, site}`.
///
/// The derived ordering (arm, then site, then `x < y`) is the canonical factor
/// order used by [`MajoranaMonomial::normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MajoranaIndex {
    pub arm: u8,
    pub site: usize,
    pub orientation: Orientation,
}

impl MajoranaIndex {
    pub const fn new(arm: u8, site: usize, orientation: Orientation) -> Self {
        MajoranaIndex { arm, site, orientation }
    }

    pub const fn x(arm: u8, site: usize) -> Self {
        Self::new(arm, site, Orientation::X)
    }

    pub const fn y(arm: u8, site: usize) -> Self {
        Self::new(arm, site, Orientation::Y)
    }

    pub fn validate(&self, sites: usize) -> Result<()> {
        if !(1..=3).contains(&self.arm) || self.site >= sites {
            return Err(Error::InvalidMajorana { index: *self, sites });
        }
        Ok(())
    }
}

impl fmt::Display for MajoranaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "γ^{}_({},{})", self.orientation.label(), self.arm, self.site)
    }
}

/// `coefficient · γ_{f0} γ_{f1} …`
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaMonomial {
    pub coefficient: Complex64,
    pub factors: Vec<MajoranaIndex>,
}

impl MajoranaMonomial {
    pub fn new(coefficient: Complex64, factors: Vec<MajoranaIndex>) -> Self {
        MajoranaMonomial { coefficient, factors }
    }

    /// `i · weight · γ_a γ_b`, the form of every Hermitian quadratic term.
    pub fn quadratic(weight: f64, a: MajoranaIndex, b: MajoranaIndex) -> Self {
        MajoranaMonomial::new(Complex64::new(0.0, weight), vec![a, b])
    }

    /// Sorts factors into canonical order, flipping the sign once per
    /// transposition, then cancels equal neighbours (`γ² = 1`).
    pub fn normalize(&self) -> MajoranaMonomial {
        let mut factors = self.factors.clone();
        let mut swaps = 0usize;
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1] > factors[j] {
                factors.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        let mut reduced: Vec<MajoranaIndex> = Vec::with_capacity(factors.len());
        for f in factors {
            if reduced.last() == Some(&f) {
                reduced.pop();
            } else {
                reduced.push(f);
            }
        }
        let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
        MajoranaMonomial { coefficient: self.coefficient * sign, factors: reduced }
    }

    /// Operator product, normalized.
    pub fn multiply(&self, other: &MajoranaMonomial) -> MajoranaMonomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        MajoranaMonomial::new(self.coefficient * other.coefficient, factors).normalize()
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// `O m O†` for a single exchange operator.
    pub fn conjugate(&self, op: &ExchangeOperator) -> MajoranaMonomial {
        let mut sign = 1.0;
        let factors = self
            .factors
            .iter()
            .map(|&f| {
                if f == op.k {
                    sign = -sign;
                    op.l
                } else if f == op.l {
                    op.k
                } else {
                    f
                }
            })
            .collect();
        MajoranaMonomial::new(self.coefficient * sign, factors).normalize()
    }
}

impl fmt::Display for MajoranaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)", self.coefficient.re, self.coefficient.im)?;
        for factor in &self.factors {
            write!(f, "·{factor}")?;
        }
        Ok(())
    }
}

/// `O m O†`; free-function form of [`MajoranaMonomial::conjugate`].
pub fn conjugate_monomial(m: &MajoranaMonomial, op: &ExchangeOperator) -> MajoranaMonomial {
    m.conjugate(op)
}

/// Hermitian quadratic Hamiltonian `Σ i·w_{ab} γ_a γ_b` with `a < b`.
///
/// Terms are stored by canonical pair, so two Hamiltonians compare equal
/// exactly when their term multisets (with signs) agree.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MajoranaHamiltonian {
    sites: usize,
    terms: BTreeMap<(MajoranaIndex, MajoranaIndex), f64>,
}

impl MajoranaHamiltonian {
    pub fn new(sites: usize) -> Self {
        MajoranaHamiltonian { sites, terms: BTreeMap::new() }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Adds `i · weight · γ_a γ_b`.
    pub fn add(&mut self, weight: f64, a: MajoranaIndex, b: MajoranaIndex) -> Result<()> {
        self.add_monomial(&MajoranaMonomial::quadratic(weight, a, b))
    }

    /// Adds a monomial that normalizes to `i·w·γ_a γ_b` with real `w`.
    pub fn add_monomial(&mut self, m: &MajoranaMonomial) -> Result<()> {
        let m = m.normalize();
        if m.degree() != 2 || m.coefficient.re != 0.0 {
            return Err(Error::NotQuadratic);
        }
        let key = (m.factors[0], m.factors[1]);
        let weight = self.terms.entry(key).or_insert(0.0);
        *weight += m.coefficient.im;
        if *weight == 0.0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Canonical `(a, b, w)` triples for `i·w·γ_a γ_b`, `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (MajoranaIndex, MajoranaIndex, f64)> + '_ {
        self.terms.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn terms(&self) -> impl Iterator<Item = MajoranaMonomial> + '_ {
        self.pairs().map(|(a, b, w)| MajoranaMonomial::quadratic(w, a, b))
    }

    pub fn weight(&self, a: MajoranaIndex, b: MajoranaIndex) -> f64 {
        let (key, sign) = if a < b { ((a, b), 1.0) } else { ((b, a), -1.0) };
        self.terms.get(&key).map_or(0.0, |w| sign * w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Conjugates by each exchange in turn; `ops[0]` acts first (innermost).
    pub fn conjugate(&self, ops: &[ExchangeOperator]) -> MajoranaHamiltonian {
        let mut current = self.clone();
        for op in ops {
            let mut next = MajoranaHamiltonian::new(self.sites);
            for m in current.terms() {
                next.add_monomial(&m.conjugate(op)).expect("conjugation preserves quadratic form");
            }
            current = next;
        }
        current
    }
}

impl fmt::Display for MajoranaHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b, w)) in self.pairs().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{w:+} i {a} {b}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`MajoranaHamiltonian::conjugate`].
pub fn conjugate_hamiltonian(h: &MajoranaHamiltonian, ops: &[ExchangeOperator]) -> MajoranaHamiltonian {
    h.conjugate(ops)
}

/// `O_{kl} = (1 + γ_k γ_l)/√2 = exp(π/4 · γ_k γ_l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExchangeOperator {
    pub k: MajoranaIndex,
    pub l: MajoranaIndex,
}

impl ExchangeOperator {
    pub fn new(k: MajoranaIndex, l: MajoranaIndex) -> Result<Self> {
        if k == l {
            return Err(Error::DegenerateExchange(k));
        }
        Ok(ExchangeOperator { k, l })
    }

    /// `γ_k γ_l` as a unit-coefficient monomial (not normalized).
    pub fn generator(&self) -> MajoranaMonomial {
        MajoranaMonomial::new(Complex64::new(1.0, 0.0), vec![self.k, self.l])
    }

    /// `O† = O_{lk}`.
    pub fn inverse(&self) -> ExchangeOperator {
        ExchangeOperator { k: self.l, l: self.k }
    }
}

impl fmt::Display for ExchangeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "O^{}{}_[({},{}),({},{})]",
            self.k.orientation.label(),
            self.l.orientation.label(),
            self.k.arm,
            self.k.site,
            self.l.arm,
            self.l.site
        )
    }
}

/// The three sub-operators of one braiding step, each listed in written
/// product order: the last entry is the rightmost factor and acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct SubOperators {
    /// Donor arm turned trivial up to the junction site.
    pub transfer: Vec<ExchangeOperator>,
    /// The two exchanges across the junction.
    pub junction: Vec<ExchangeOperator>,
    /// Host arm turned topological.
    pub restore: Vec<ExchangeOperator>,
}

impl SubOperators {
    /// All exchanges in the order they act on a state: transfer, then
    /// junction, then restore, each sub-product applied right to left.
    pub fn application_order(&self) -> Vec<ExchangeOperator> {
        self.transfer
            .iter()
            .rev()
            .chain(self.junction.iter().rev())
            .chain(self.restore.iter().rev())
            .copied()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.transfer.len() + self.junction.len() + self.restore.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One braiding step `T = U^R_host · U^J_{host,donor} · U^T_donor`.
///
/// The step moves the trivial phase from `host` onto `donor`: configuration
/// `(remaining, donor)` with `host` trivial becomes `(remaining, host)` with
/// `donor` trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BraidStep {
    pub donor: u8,
    pub host: u8,
    pub remaining: u8,
}

impl BraidStep {
    pub fn new(donor: u8, host: u8) -> Result<Self> {
        for arm in [donor, host] {
            if !(1..=3).contains(&arm) {
                return Err(Error::InvalidArm(arm));
            }
        }
        if donor == host {
            return Err(Error::InvalidConfiguration(donor, host));
        }
        Ok(BraidStep { donor, host, remaining: 6 - donor - host })
    }

    pub fn sub_operators(&self, sites: usize) -> Result<SubOperators> {
        build_sub_operators(self, sites)
    }

    /// Exchanges in application order; `2n` of them.
    pub fn exchanges(&self, sites: usize) -> Result<Vec<ExchangeOperator>> {
        Ok(self.sub_operators(sites)?.application_order())
    }
}

/// Builds `U^T_c`, `U^J_{ac}` and `U^R_a` for a step with donor `c` and host `a`.
pub fn build_sub_operators(step: &BraidStep, sites: usize) -> Result<SubOperators> {
    if sites < 1 {
        return Err(Error::InvalidSites(sites));
    }
    let n = sites;
    let (c, a) = (step.donor, step.host);
    let yy = |k: MajoranaIndex, l: MajoranaIndex| ExchangeOperator { k, l };

    // ∏_{j=n-2}^{0} O^{yy}_{c(n-2-j), c(n-1-j)}
    let transfer = (0..n.saturating_sub(1))
        .rev()
        .map(|j| yy(MajoranaIndex::y(c, n - 2 - j), MajoranaIndex::y(c, n - 1 - j)))
        .collect();
    let junction = vec![
        yy(MajoranaIndex::y(c, 0), MajoranaIndex::y(a, 0)),
        yy(MajoranaIndex::x(c, 0), MajoranaIndex::x(a, 0)),
    ];
    // ∏_{j=n-2}^{0} O^{yy}_{a(j+1), a(j)}
    let restore = (0..n.saturating_sub(1))
        .rev()
        .map(|j| yy(MajoranaIndex::y(a, j + 1), MajoranaIndex::y(a, j)))
        .collect();
    Ok(SubOperators { transfer, junction, restore })
}

/// The six braiding steps. Steps 1–3 form one exchange of the two unpaired
/// modes; steps 4–6 repeat them.
pub fn protocol_steps() -> [BraidStep; 6] {
    let t1 = BraidStep { donor: 2, host: 3, remaining: 1 };
    let t2 = BraidStep { donor: 1, host: 2, remaining: 3 };
    let t3 = BraidStep { donor: 3, host: 1, remaining: 2 };
    [t1, t2, t3, t1, t2, t3]
}
