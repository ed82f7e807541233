//! Weights of the covering torus and the monomial order used throughout.
//!
//! A [`Weight`] is a point of the character lattice of the covering torus.
//! Its semisimple block is written in fundamental-weight coordinates, its
//! central block in characters of the central torus. The total order on
//! weights is graded lexicographic on the concatenated coordinates; it is
//! translation invariant, which is what exact Laurent division needs.

use std::cmp::Ordering;

/// A lattice point of the weight lattice, split into semisimple and central
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub ss: Vec<i64>,
    pub central: Vec<i64>,
}

impl Weight {
    pub fn new(ss: Vec<i64>, central: Vec<i64>) -> Self {
        Weight { ss, central }
    }

    /// The origin with the given block sizes.
    pub fn zero(ss_rank: usize, central_rank: usize) -> Self {
        Weight {
            ss: vec![0; ss_rank],
            central: vec![0; central_rank],
        }
    }

    /// The fundamental weight `omega_i` (central block zero).
    pub fn fundamental(i: usize, ss_rank: usize, central_rank: usize) -> Self {
        let mut w = Weight::zero(ss_rank, central_rank);
        w.ss[i] = 1;
        w
    }

    pub fn is_zero(&self) -> bool {
        self.ss.iter().all(|&x| x == 0) && self.central.iter().all(|&x| x == 0)
    }

    fn grade(&self) -> i64 {
        self.ss.iter().sum::<i64>() + self.central.iter().sum::<i64>()
    }

    fn zip_check(&self, other: &Self) {
        debug_assert_eq!(self.ss.len(), other.ss.len(), "weight rank mismatch");
        debug_assert_eq!(
            self.central.len(),
            other.central.len(),
            "central rank mismatch"
        );
    }
}

impl super::laurent::Exponent for Weight {
    fn add(&self, other: &Self) -> Self {
        self.zip_check(other);
        Weight {
            ss: self.ss.iter().zip(&other.ss).map(|(a, b)| a + b).collect(),
            central: self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.zip_check(other);
        Weight {
            ss: self.ss.iter().zip(&other.ss).map(|(a, b)| a - b).collect(),
            central: self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn component_min(&self, other: &Self) -> Self {
        self.zip_check(other);
        Weight {
            ss: self
                .ss
                .iter()
                .zip(&other.ss)
                .map(|(a, b)| *a.min(b))
                .collect(),
            central: self
                .central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    fn leq_componentwise(&self, other: &Self) -> bool {
        self.zip_check(other);
        self.ss.iter().zip(&other.ss).all(|(a, b)| a <= b)
            && self.central.iter().zip(&other.central).all(|(a, b)| a <= b)
    }
}

// Graded lexicographic: total degree first, then lex on (ss, central).
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.ss.cmp(&other.ss))
            .then_with(|| self.central.cmp(&other.central))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exponent of the doubled lattice: `u` is the first tensor factor,
/// `v` the diagonal one. Ring operations never mix the two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiWeight {
    pub u: Weight,
    pub v: Weight,
}

impl BiWeight {
    pub fn new(u: Weight, v: Weight) -> Self {
        BiWeight { u, v }
    }
}

impl super::laurent::Exponent for BiWeight {
    fn add(&self, other: &Self) -> Self {
        BiWeight {
            u: super::laurent::Exponent::add(&self.u, &other.u),
            v: super::laurent::Exponent::add(&self.v, &other.v),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        BiWeight {
            u: super::laurent::Exponent::sub(&self.u, &other.u),
            v: super::laurent::Exponent::sub(&self.v, &other.v),
        }
    }

    fn component_min(&self, other: &Self) -> Self {
        BiWeight {
            u: super::laurent::Exponent::component_min(&self.u, &other.u),
            v: super::laurent::Exponent::component_min(&self.v, &other.v),
        }
    }

    fn leq_componentwise(&self, other: &Self) -> bool {
        super::laurent::Exponent::leq_componentwise(&self.u, &other.u)
            && super::laurent::Exponent::leq_componentwise(&self.v, &other.v)
    }
}
