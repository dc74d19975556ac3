use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponent = u16;

/// Dense exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[Exponent; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, index: usize, power: Exponent) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = power;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> Exponent {
        self.0[i]
    }

    pub fn set_exponent(&mut self, i: usize, e: Exponent) {
        self.0[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree restricted to the variables in `vars`.
    pub fn partial_degree(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i] as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit signature for fast non-divisibility checks: bit `i % 64` is set
    /// when variable `i` occurs.
    pub fn divmask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | 1 << (i % 64))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Monomial order. Elimination orders compare block by block, degrevlex
/// inside each block; the first block is the one being eliminated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    DegRevLex,
    Lex,
    Elimination(Vec<Vec<usize>>),
}

impl TermOrder {
    /// Elimination order with `first` as the dominant block and every other
    /// variable of an `nvars`-variable ring in a second block.
    pub fn eliminate(first: &[usize], nvars: usize) -> Self {
        let rest = (0..nvars).filter(|i| !first.contains(i)).collect();
        TermOrder::Elimination(vec![first.to_vec(), rest])
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::DegRevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            TermOrder::Lex => a.exponents().cmp(b.exponents()),
            TermOrder::Elimination(blocks) => {
                for block in blocks {
                    let (da, db) = (a.partial_degree(block), b.partial_degree(block));
                    if da != db {
                        return da.cmp(&db);
                    }
                    for &i in block.iter().rev() {
                        let (x, y) = (a.exponent(i), b.exponent(i));
                        if x != y {
                            return y.cmp(&x);
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checks that the blocks partition `0..nvars`.
    pub fn validate(&self, nvars: usize) -> bool {
        match self {
            TermOrder::Elimination(blocks) => {
                let mut seen = vec![false; nvars];
                for &i in blocks.iter().flatten() {
                    if i >= nvars || seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
                seen.into_iter().all(|s| s)
            }
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::DegRevLex;
        // x > y > z; x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&mono(&[2, 0, 0]), &mono(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 0, 1]), &mono(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = TermOrder::eliminate(&[0], 3);
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 9, 9])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..5, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_order() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::DegRevLex),
            Just(TermOrder::Lex),
            Just(TermOrder::eliminate(&[0, 2], 4)),
            Just(TermOrder::Elimination(vec![vec![3], vec![1, 0], vec![2]])),
        ]
    }

    proptest! {
        #[test]
        fn order_is_multiplicative_and_total(o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn elimination_property(a in arb_mono(), b in arb_mono()) {
            let o = TermOrder::eliminate(&[0, 2], 4);
            let has = |m: &Monomial| m.exponent(0) > 0 || m.exponent(2) > 0;
            if has(&a) && !has(&b) {
                prop_assert_eq!(o.cmp(&a, &b), Ordering::Greater);
            }
        }
    }
}
