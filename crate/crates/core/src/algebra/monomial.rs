use std::cmp::Ordering;
use std::fmt;

/// The normal-ordered word `x^nx k^nk q^nq p^np`; `q` always precedes `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QCMonomial {
    pub x: u32,
    pub k: u32,
    pub q: u32,
    pub p: u32,
}

impl QCMonomial {
    pub const ONE: QCMonomial = QCMonomial::new(0, 0, 0, 0);
    pub const X: QCMonomial = QCMonomial::new(1, 0, 0, 0);
    pub const K: QCMonomial = QCMonomial::new(0, 1, 0, 0);
    pub const Q: QCMonomial = QCMonomial::new(0, 0, 1, 0);
    pub const P: QCMonomial = QCMonomial::new(0, 0, 0, 1);

    pub const fn new(x: u32, k: u32, q: u32, p: u32) -> Self {
        Self { x, k, q, p }
    }

    pub fn from_exponents(e: [u32; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn exponents(&self) -> [u32; 4] {
        [self.x, self.k, self.q, self.p]
    }

    pub fn degree(&self) -> u32 {
        self.x + self.k + self.q + self.p
    }

    pub fn is_classical(&self) -> bool {
        self.q == 0 && self.p == 0
    }

    pub fn is_quantum(&self) -> bool {
        self.x == 0 && self.k == 0
    }

    /// The `(x, k)` part.
    pub fn classical_part(&self) -> QCMonomial {
        Self::new(self.x, self.k, 0, 0)
    }

    /// The `(q, p)` part.
    pub fn quantum_part(&self) -> QCMonomial {
        Self::new(0, 0, self.q, self.p)
    }

    /// Exponent-wise sum; equals the product only when no `p` meets a later `q`.
    pub fn concat(&self, other: &QCMonomial) -> QCMonomial {
        Self::new(
            self.x + other.x,
            self.k + other.k,
            self.q + other.q,
            self.p + other.p,
        )
    }

    /// Key used for canonical text and JSON: higher grade first, then
    /// graded-lex with `x > k > q > p`.
    pub fn display_cmp(&self, other: &QCMonomial) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.lex_desc(other))
    }

    fn lex_desc(&self, other: &QCMonomial) -> Ordering {
        other.exponents().cmp(&self.exponents())
    }
}

/// Enumeration order: grade ascending, then the `x, k, q, p` exponents
/// compared lexicographically with the larger exponent first, so degree one
/// runs `x, k, q, p`.
impl Ord for QCMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_desc(other))
    }
}

impl PartialOrd for QCMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QCMonomial {
    /// `x^2*k*q*p`, or `1` for the unit monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, e) in [("x", self.x), ("k", self.k), ("q", self.q), ("p", self.p)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(sym)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
