use super::BaseRing;
use crate::error::{Error, Interruption, Result};
use crate::exec::Config;
use crate::field::Field;
use crate::groebner::{ideal_equal, ideal_quotient};
use crate::poly::Poly;

/// Relation type of the ideal `(f)` of `k[x]/a`: the least `n >= 1` with
/// `(a : f^(n+1)) = (a : f^n)`. The annihilator chain is built one colon at a
/// time, `(a : f^(n+1)) = ((a : f^n) : f)`, and the search stops after
/// `max_degree` steps.
pub fn relation_type_cyclic<F: Field>(base: &BaseRing<F>, f: &Poly<F>, config: &Config) -> Result<u32> {
    let ring = base.ring();
    let f = f.transfer(ring)?;
    let limits = &config.limits;
    let mut current = ideal_quotient(ring, base.ideal(), &f, limits)?;
    for n in 1..=limits.max_degree {
        let next = ideal_quotient(ring, &current, &f, limits)?;
        if ideal_equal(ring, &current, &next, limits)? {
            return Ok(n);
        }
        current = next;
    }
    Err(Error::Incomplete(Interruption::DegreeCap(limits.max_degree)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{rees_ideal, relation_type};
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Ring;

    fn truncated<F: Field>(field: F, k: u32) -> BaseRing<F> {
        let ring = Ring::polynomial(field, &["x"]).unwrap();
        let a = ring.gen(0).pow(k);
        BaseRing::quotient(ring, vec![a]).unwrap()
    }

    #[test]
    fn truncated_polynomial_rings() {
        for k in 2..=4 {
            let base = truncated(Rationals, k);
            let x = base.ring().gen(0);
            assert_eq!(relation_type_cyclic(&base, &x, &Config::default()).unwrap(), k);
        }
    }

    #[test]
    fn regular_element() {
        let ring = Ring::polynomial(PrimeField::default(), &["x", "y"]).unwrap();
        let base = BaseRing::polynomial(ring.clone());
        let f = ring.parse("x*y + 1").unwrap();
        assert_eq!(relation_type_cyclic(&base, &f, &Config::default()).unwrap(), 1);
    }

    #[test]
    fn element_of_base_ideal() {
        let base = truncated(PrimeField::default(), 2);
        let f = base.ring().parse("x^3").unwrap();
        assert_eq!(relation_type_cyclic(&base, &f, &Config::default()).unwrap(), 1);
    }

    #[test]
    fn agrees_with_rees_path() {
        let ring = Ring::polynomial(PrimeField::default(), &["x", "y"]).unwrap();
        let a = ring.parse_list("x^2*y, y^3").unwrap();
        let base = BaseRing::quotient(ring.clone(), a).unwrap();
        let f = ring.parse("x + y").unwrap();
        let cyclic = relation_type_cyclic(&base, &f, &Config::default()).unwrap();
        let pres = rees_ideal(&base, &[f], &Config::default()).unwrap();
        assert_eq!(relation_type(&pres, &Config::default()).unwrap().rt, cyclic);
    }
}
