//! The per-step bookkeeping tuple `(α, β, γ, η, λ)`.
//!
//! A step that removes `α` vertices and at least `β` edges, lowers `p` by at
//! least `γ` and `q` by at least `η`, and collects `λ` vertices keeps the
//! bound `a·n − b·m − c·p − d·q` whenever `λ − αa + βb + γc + ηd ≥ 0`.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Accounting {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub eta: i64,
    pub lambda: i64,
}

impl Accounting {
    pub const fn new(alpha: i64, beta: i64, gamma: i64, eta: i64, lambda: i64) -> Self {
        Accounting {
            alpha,
            beta,
            gamma,
            eta,
            lambda,
        }
    }

    /// Coefficients `[const, a, b, c, d]` of the step's inequality.
    pub fn inequality(&self) -> [i64; 5] {
        [self.lambda, -self.alpha, self.beta, self.gamma, self.eta]
    }

    /// Value of `λ − αa + βb + γc + ηd` at `point = (a, b, c, d)`.
    pub fn slack_at(&self, point: &[BigRational; 4]) -> BigRational {
        let k = self.inequality();
        let mut s = BigRational::from_integer(BigInt::from(k[0]));
        for i in 0..4 {
            s += &point[i] * BigRational::from_integer(BigInt::from(k[i + 1]));
        }
        s
    }

    pub fn add(&self, o: &Accounting) -> Accounting {
        Accounting::new(
            self.alpha + o.alpha,
            self.beta + o.beta,
            self.gamma + o.gamma,
            self.eta + o.eta,
            self.lambda + o.lambda,
        )
    }
}

impl fmt::Display for Accounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.alpha, self.beta, self.gamma, self.eta, self.lambda
        )
    }
}
