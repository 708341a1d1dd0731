//! Canonical invariant keys.
//!
//! A key names one invariant: the kind (ambient space, hypersurface, or
//! relative), the geometry, the curve degree, the tangency multiplicity at
//! the first marked point (relative only), and the list of insertions.
//! Keys are what the memo cache and the cache files are indexed by, so the
//! text grammar is bit-exact:
//!
//! ```text
//! key     := kind ";" "N=" int ";" ["l=" int ";"] "d=" int ";" ["m=" int ";"] "ins=" inslist
//! kind    := "A" | "Y" | "R"
//! inslist := ins ("," ins)* | ""
//! ins     := exp "." psi
//! ```
//!
//! `l=` is present for kinds `Y` and `R`, `m=` for kind `R`. The first list
//! element is slot 1, the only slot allowed to carry a cotangent-line power
//! or a tangency multiplicity. In canonical form the remaining insertions
//! are sorted descending by `(exp, psi)`; slot 1 joins the sort exactly when
//! nothing pins it (its psi is 0 and, for relative keys, m is 0).

use crate::algebra::Geometry;
use crate::rational::Rat;
use std::fmt;
use thiserror::Error;

/// Which moduli problem the invariant lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Kind {
    /// Descendant invariants of the ambient projective space.
    Ambient,
    /// Restricted invariants of the hypersurface itself.
    Hypersurface,
    /// Invariants relative to the hypersurface, with tangency multiplicity
    /// `m` at slot 1.
    Relative,
}

/// A cohomology insertion at a marked point: hyperplane-class exponent and
/// cotangent-line power.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Insertion {
    pub exp: u32,
    pub psi: u32,
}

impl Insertion {
    pub fn new(exp: u32, psi: u32) -> Self {
        Insertion { exp, psi }
    }

    pub fn primary(exp: u32) -> Self {
        Insertion { exp, psi: 0 }
    }

    pub fn codim(&self) -> i64 {
        self.exp as i64 + self.psi as i64
    }
}

/// Why an invariant is zero without any computation, if it is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reason {
    /// Some insertion exponent exceeds the dimension of the target.
    ExpOverflow,
    /// Relative multiplicity exceeds the contact budget `l*d`.
    ContactOverflow,
    /// Total insertion codimension differs from the virtual dimension.
    DimMismatch,
    /// Degree zero with fewer than three marked points.
    UnstableDegreeZero,
    /// No trivial vanishing applies.
    None,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("bad kind at position {pos}: expected 'A', 'Y' or 'R'")]
    BadKind { pos: usize },
    #[error("missing field `{field}` at position {pos}")]
    MissingField { field: &'static str, pos: usize },
    #[error("invalid integer at position {pos}")]
    InvalidInt { pos: usize },
    #[error("malformed key at position {pos}: expected {expected}")]
    Malformed { pos: usize, expected: &'static str },
    #[error("trailing input at position {pos}")]
    TrailingInput { pos: usize },
    #[error("ill-formed key: {0}")]
    Invalid(String),
}

/// Canonical identifier of one invariant.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct InvariantKey {
    pub kind: Kind,
    pub geom: Geometry,
    /// Curve degree `H . beta` (for hypersurface invariants, the degree of
    /// the pushforward class).
    pub d: u32,
    /// Tangency multiplicity at slot 1. Zero unless `kind == Relative`.
    pub m: u32,
    pub insertions: Vec<Insertion>,
}

impl InvariantKey {
    pub fn ambient(
        ambient_dim: u32,
        d: u32,
        insertions: Vec<Insertion>,
    ) -> Result<Self, KeyError> {
        // The hypersurface degree is irrelevant for ambient invariants and
        // is normalized to 1 so equal keys serialize identically.
        Self::validated(Kind::Ambient, Geometry::new(ambient_dim, 1), d, 0, insertions)
    }

    pub fn hypersurface(
        ambient_dim: u32,
        hyp_degree: u32,
        d: u32,
        insertions: Vec<Insertion>,
    ) -> Result<Self, KeyError> {
        Self::validated(
            Kind::Hypersurface,
            Geometry::new(ambient_dim, hyp_degree),
            d,
            0,
            insertions,
        )
    }

    pub fn relative(
        ambient_dim: u32,
        hyp_degree: u32,
        d: u32,
        m: u32,
        insertions: Vec<Insertion>,
    ) -> Result<Self, KeyError> {
        Self::validated(
            Kind::Relative,
            Geometry::new(ambient_dim, hyp_degree),
            d,
            m,
            insertions,
        )
    }

    fn validated(
        kind: Kind,
        geom: Geometry,
        d: u32,
        m: u32,
        insertions: Vec<Insertion>,
    ) -> Result<Self, KeyError> {
        if kind != Kind::Ambient && geom.ambient_dim < 2 {
            return Err(KeyError::Invalid(format!(
                "hypersurface geometry needs N >= 2, got N={}",
                geom.ambient_dim
            )));
        }
        if kind != Kind::Relative && m != 0 {
            return Err(KeyError::Invalid(
                "multiplicity is only meaningful for relative keys".into(),
            ));
        }
        if m > 0 && insertions.is_empty() {
            return Err(KeyError::Invalid(
                "positive multiplicity needs a slot-1 insertion".into(),
            ));
        }
        if let Some(bad) = insertions.iter().skip(1).position(|i| i.psi > 0) {
            return Err(KeyError::Invalid(format!(
                "psi power at slot {} (only slot 1 may carry psi)",
                bad + 2
            )));
        }
        let key = InvariantKey {
            kind,
            geom,
            d,
            m,
            insertions,
        };
        Ok(key)
    }

    pub fn n(&self) -> usize {
        self.insertions.len()
    }

    pub fn slot1(&self) -> Option<Insertion> {
        self.insertions.first().copied()
    }

    /// Cotangent-line power at slot 1 (zero for empty keys).
    pub fn psi1(&self) -> u32 {
        self.insertions.first().map_or(0, |i| i.psi)
    }

    pub fn total_codim(&self) -> i64 {
        self.insertions.iter().map(|i| i.codim()).sum()
    }

    /// Virtual dimension of the underlying moduli space.
    pub fn vdim(&self) -> i64 {
        let n_dim = self.geom.ambient_dim as i64;
        let d = self.d as i64;
        let base = d * (n_dim + 1) + n_dim - 3 + self.n() as i64;
        match self.kind {
            Kind::Ambient => base,
            Kind::Relative => base - self.m as i64,
            Kind::Hypersurface => base - (self.geom.hyp_degree as i64 * d + 1),
        }
    }

    /// Largest exponent representing a nonzero class for this kind.
    fn max_exp(&self) -> u32 {
        match self.kind {
            Kind::Hypersurface => self.geom.ambient_dim - 1,
            _ => self.geom.ambient_dim,
        }
    }

    /// Trivial-vanishing gate, checks applied in the listed order.
    pub fn is_trivially_zero(&self) -> Reason {
        if self.insertions.iter().any(|i| i.exp > self.max_exp()) {
            return Reason::ExpOverflow;
        }
        if self.kind == Kind::Relative && self.m > self.geom.contact_budget(self.d) {
            return Reason::ContactOverflow;
        }
        if self.total_codim() != self.vdim() {
            return Reason::DimMismatch;
        }
        if self.d == 0 && self.n() < 3 {
            return Reason::UnstableDegreeZero;
        }
        Reason::None
    }

    /// True when slot 1 carries data that pins it to the front.
    fn slot1_pinned(&self) -> bool {
        self.psi1() > 0 || (self.kind == Kind::Relative && self.m > 0)
    }

    /// Canonical form: tail sorted descending by `(exp, psi)`; slot 1 joins
    /// the sort when unpinned. Value-preserving, since invariants are
    /// symmetric in marked points with their payloads.
    pub fn canonicalize(&self) -> Self {
        let mut key = self.clone();
        if key.insertions.is_empty() {
            return key;
        }
        if key.slot1_pinned() {
            key.insertions[1..].sort_unstable_by(|a, b| b.cmp(a));
        } else {
            key.insertions.sort_unstable_by(|a, b| b.cmp(a));
        }
        key
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Bit-exact text form of the key.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        s.push(match self.kind {
            Kind::Ambient => 'A',
            Kind::Hypersurface => 'Y',
            Kind::Relative => 'R',
        });
        s.push_str(&format!(";N={}", self.geom.ambient_dim));
        if self.kind != Kind::Ambient {
            s.push_str(&format!(";l={}", self.geom.hyp_degree));
        }
        s.push_str(&format!(";d={}", self.d));
        if self.kind == Kind::Relative {
            s.push_str(&format!(";m={}", self.m));
        }
        s.push_str(";ins=");
        let ins: Vec<String> = self
            .insertions
            .iter()
            .map(|i| format!("{}.{}", i.exp, i.psi))
            .collect();
        s.push_str(&ins.join(","));
        s
    }

    /// Parses the grammar above. Rejects malformed input with the position
    /// of the offending byte; the result is well-formed but not necessarily
    /// canonical.
    pub fn parse(s: &str) -> Result<Self, KeyError> {
        let mut p = Parser { s, pos: 0 };
        let kind = match p.next_char() {
            Some('A') => Kind::Ambient,
            Some('Y') => Kind::Hypersurface,
            Some('R') => Kind::Relative,
            _ => return Err(KeyError::BadKind { pos: 0 }),
        };
        let ambient_dim = p.field("N")?;
        let hyp_degree = if kind != Kind::Ambient { p.field("l")? } else { 1 };
        let d = p.field("d")?;
        let m = if kind == Kind::Relative { p.field("m")? } else { 0 };
        p.expect_lit(";", "ins")?;
        p.expect_lit("ins=", "ins")?;
        let insertions = p.ins_list()?;
        if p.pos != p.s.len() {
            return Err(KeyError::TrailingInput { pos: p.pos });
        }
        if ambient_dim < 1 || (kind != Kind::Ambient && hyp_degree < 1) {
            return Err(KeyError::Invalid("N >= 1 and l >= 1 required".into()));
        }
        Self::validated(kind, Geometry::new(ambient_dim, hyp_degree), d, m, insertions)
    }

    /// Round-trip helper: parse and canonicalize in one step.
    pub fn parse_canonical(s: &str) -> Result<Self, KeyError> {
        Ok(Self::parse(s)?.canonicalize())
    }

    /// The ambient key with the same degree and insertions. Used for the
    /// identification of multiplicity-zero relative invariants with ambient
    /// ones (the tangency condition is empty).
    pub fn ambient_twin(&self) -> Self {
        InvariantKey {
            kind: Kind::Ambient,
            geom: Geometry::new(self.geom.ambient_dim, 1),
            d: self.d,
            m: 0,
            insertions: self.insertions.clone(),
        }
    }

    /// Clone with slot 1 replaced.
    pub fn with_slot1(&self, ins: Insertion) -> Self {
        let mut key = self.clone();
        key.insertions[0] = ins;
        key
    }

    /// Clone with multiplicity replaced (relative keys).
    pub fn with_m(&self, m: u32) -> Self {
        let mut key = self.clone();
        key.m = m;
        key
    }

    /// The pairing value of the full insertion product on the target space,
    /// used by degree-zero evaluations.
    pub fn point_pairing(&self) -> Rat {
        let total: i64 = self.insertions.iter().map(|i| i.exp as i64).sum();
        match self.kind {
            Kind::Hypersurface => {
                if total == self.geom.ambient_dim as i64 - 1 {
                    Rat::from(self.geom.hyp_degree)
                } else {
                    Rat::zero()
                }
            }
            _ => {
                if total == self.geom.ambient_dim as i64 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }
        }
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next_char(&mut self) -> Option<char> {
        let c = self.s[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect_lit(&mut self, lit: &str, field: &'static str) -> Result<(), KeyError> {
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else if self.pos >= self.s.len() {
            Err(KeyError::MissingField { field, pos: self.pos })
        } else {
            Err(KeyError::Malformed {
                pos: self.pos,
                expected: field,
            })
        }
    }

    /// `";" name "=" int`
    fn field(&mut self, name: &'static str) -> Result<u32, KeyError> {
        self.expect_lit(";", name)?;
        let lit = match name {
            "N" => "N=",
            "l" => "l=",
            "d" => "d=",
            "m" => "m=",
            _ => unreachable!(),
        };
        self.expect_lit(lit, name)?;
        self.int()
    }

    fn int(&mut self) -> Result<u32, KeyError> {
        let start = self.pos;
        let digits: usize = self.s[start..]
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return Err(KeyError::InvalidInt { pos: start });
        }
        self.pos += digits;
        self.s[start..self.pos]
            .parse()
            .map_err(|_| KeyError::InvalidInt { pos: start })
    }

    fn ins_list(&mut self) -> Result<Vec<Insertion>, KeyError> {
        let mut out = Vec::new();
        if self.pos == self.s.len() {
            return Ok(out);
        }
        loop {
            let exp = self.int()?;
            self.expect_lit(".", "ins")?;
            let psi = self.int()?;
            out.push(Insertion { exp, psi });
            if self.pos == self.s.len() {
                return Ok(out);
            }
            self.expect_lit(",", "ins")?;
        }
    }
}
