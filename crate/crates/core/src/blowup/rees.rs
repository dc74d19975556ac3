use std::sync::Arc;

use super::BaseRing;
use crate::error::{Error, Result};
use crate::exec::Config;
use crate::field::Field;
use crate::groebner::{cmp_by_leading, GroebnerBasis, Status};
use crate::poly::{Poly, Ring, TermOrder, VarKind};

/// Presentation of the Rees algebra of `(f_1, .., f_m)` over a base ring.
#[derive(Clone, Debug)]
pub struct ReesPresentation<F: Field> {
    base: BaseRing<F>,
    generators: Vec<Poly<F>>,
    ring: Arc<Ring<F>>,
    base_ideal: Vec<Poly<F>>,
    relations: Vec<Poly<F>>,
    weights: Option<Vec<u32>>,
    status: Status,
}

impl<F: Field> ReesPresentation<F> {
    pub fn base(&self) -> &BaseRing<F> {
        &self.base
    }

    /// The ideal generators `f_i`, in the base ring.
    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    /// `S = k[x, T_1..T_m]`.
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// The base ideal `a`, extended to `S`.
    pub fn base_ideal(&self) -> &[Poly<F>] {
        &self.base_ideal
    }

    /// T-homogeneous generators of `Q` (modulo `a`), each of T-degree at
    /// least one, ascending by T-degree.
    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Complete
    }

    /// Positive weights on `S` (`x -> 1`, `T_i -> deg f_i`) for which the
    /// generators, `a` and hence `Q` are homogeneous, when they exist.
    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// Whether `Q` is bigraded by (x-degree, T-degree): homogeneous `f_i` of
    /// one common positive degree and a homogeneous base ideal.
    pub fn is_bigraded(&self) -> bool {
        self.weights.is_some() && {
            let degs: Vec<u32> = self.generators.iter().filter_map(|f| f.total_degree()).collect();
            degs.windows(2).all(|w| w[0] == w[1])
        }
    }

    /// `T_i -> t f_i`, then reduction modulo `a`: zero for every element of `Q`.
    pub fn substitution_check(&self, p: &Poly<F>) -> Result<bool> {
        let base = self.base.ring();
        let names: Vec<String> = std::iter::once(base.fresh_name("t")).chain(base.var_names().iter().cloned()).collect();
        let target = Ring::polynomial(base.field().clone(), &names)?;
        let t = target.gen(0);
        let mut images: Vec<Poly<F>> = (1..target.nvars()).map(|i| target.gen(i)).collect();
        for f in &self.generators {
            images.push(&t * &f.transfer(&target)?);
        }
        let image = p.substitute(&target, &images)?;
        let a: Vec<Poly<F>> = self.base.ideal().iter().map(|g| g.transfer(&target)).collect::<Result<_>>()?;
        let gb = GroebnerBasis::compute(&target, &a, &Default::default())?;
        gb.contains(&image)
    }
}

/// Builds the Rees ideal of `(f)` over `base` by eliminating `t` from
/// `(T_i - t f_i) + a`. When the Gröbner computation hits a limit the
/// presentation carries the partial relations and an incomplete status.
pub fn rees_ideal<F: Field>(base: &BaseRing<F>, f: &[Poly<F>], config: &Config) -> Result<ReesPresentation<F>> {
    let bring = base.ring();
    let generators = f.iter().map(|p| p.transfer(bring)).collect::<Result<Vec<_>>>()?;
    let n = bring.nvars();
    let m = generators.len();

    let t_names = presentation_names(bring, m);
    let mut svars: Vec<(String, VarKind)> = bring.var_names().iter().map(|v| (v.clone(), VarKind::X)).collect();
    svars.extend(t_names.iter().map(|v| (v.clone(), VarKind::T)));
    let ring = Ring::new(bring.field().clone(), svars.clone(), TermOrder::DegRevLex)?;

    let aux = {
        let mut probe = bring.fresh_name("t");
        while t_names.contains(&probe) {
            probe.push('_');
        }
        probe
    };
    let mut evars = vec![(aux, VarKind::Aux)];
    evars.extend(svars);
    let eorder = TermOrder::eliminate(&[0], n + m + 1);
    let ering = Ring::new(bring.field().clone(), evars, eorder)?;

    let emb: Vec<usize> = (1..=n).collect();
    let t = ering.gen(0);
    let mut gens: Vec<Poly<F>> = Vec::with_capacity(m + base.ideal().len());
    for (i, fi) in generators.iter().enumerate() {
        gens.push(&ering.gen(1 + n + i) - &(&t * &fi.map_vars(&ering, &emb)));
    }
    gens.extend(base.ideal().iter().map(|a| a.map_vars(&ering, &emb)));

    let gb = GroebnerBasis::compute(&ering, &gens, &config.limits)?;
    let status = gb.status();

    let weights = homogeneous_weights(&generators, base.ideal());
    let tvars = ring.t_vars();
    let mut relations: Vec<Poly<F>> = Vec::new();
    for g in gb.generators().iter().filter(|g| !g.involves(0)) {
        let g = g.transfer(&ring)?;
        let pieces = match &weights {
            Some(w) => g.split_by(|mono| (mono.partial_degree(&tvars), mono.weighted_degree(w))),
            None => g.t_homogeneous_components(),
        };
        for p in pieces {
            if p.t_degree().unwrap_or(0) >= 1 {
                let p = p.normalized();
                if !relations.contains(&p) {
                    relations.push(p);
                }
            }
        }
    }
    relations.sort_by(|a, b| a.t_degree().cmp(&b.t_degree()).then_with(|| cmp_by_leading(a, b)));

    let base_ideal = base.ideal().iter().map(|a| a.transfer(&ring)).collect::<Result<Vec<_>>>()?;
    Ok(ReesPresentation { base: base.clone(), generators, ring, base_ideal, relations, weights, status })
}

/// `T1..Tm`, or another stem when those names are taken by base variables.
fn presentation_names<F: Field>(base: &Ring<F>, m: usize) -> Vec<String> {
    for stem in ["T", "U", "W", "Tv"] {
        let names: Vec<String> = (1..=m).map(|i| format!("{stem}{i}")).collect();
        if names.iter().all(|n| base.var_index(n).is_none()) {
            return names;
        }
    }
    (1..=m).map(|i| format!("T_rees_{i}")).collect()
}

/// Weights on `S = k[x, T]` making the presentation homogeneous: every x has
/// weight 1 and `T_i` gets `deg f_i` (1 for `f_i = 0`).
fn homogeneous_weights<F: Field>(f: &[Poly<F>], a: &[Poly<F>]) -> Option<Vec<u32>> {
    if !a.iter().all(|p| p.is_homogeneous()) {
        return None;
    }
    let n = f.first().map(|p| p.ring().nvars()).or_else(|| a.first().map(|p| p.ring().nvars()))?;
    let mut w = vec![1u32; n];
    for p in f {
        if !p.is_homogeneous() {
            return None;
        }
        match p.total_degree() {
            None => w.push(1),
            Some(0) => return None,
            Some(d) => w.push(d),
        }
    }
    Some(w)
}

pub(crate) fn require_exact<F: Field>(pres: &ReesPresentation<F>) -> Result<()> {
    match pres.status {
        Status::Complete => Ok(()),
        Status::Incomplete(why) => Err(Error::Incomplete(why)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::groebner::ideal_equal;

    fn base<F: Field>(f: F, vars: &[&str]) -> BaseRing<F> {
        BaseRing::polynomial(Ring::polynomial(f, vars).unwrap())
    }

    #[test]
    fn scroll_relations() {
        let b = base(Rationals, &["x", "y"]);
        let f = b.ring().parse_list("x^2, x*y, y^2").unwrap();
        let pres = rees_ideal(&b, &f, &Config::default()).unwrap();
        assert!(pres.is_exact());
        assert!(pres.is_bigraded());
        let s = pres.ring();
        let expected = s.parse_list("y*T1 - x*T2, y*T2 - x*T3, T1*T3 - T2^2").unwrap();
        assert!(ideal_equal(s, pres.relations(), &expected, &Default::default()).unwrap());
        for q in pres.relations() {
            assert!(q.is_t_homogeneous());
            assert!(pres.substitution_check(q).unwrap());
        }
    }

    #[test]
    fn principal_ideal_has_no_relations() {
        let b = base(PrimeField::default(), &["x"]);
        let pres = rees_ideal(&b, &b.ring().parse_list("x").unwrap(), &Config::default()).unwrap();
        assert!(pres.relations().is_empty());
    }

    #[test]
    fn koszul_relation() {
        let b = base(PrimeField::default(), &["x", "y"]);
        let pres = rees_ideal(&b, &b.ring().parse_list("x, y").unwrap(), &Config::default()).unwrap();
        let s = pres.ring();
        assert!(ideal_equal(s, pres.relations(), &s.parse_list("y*T1 - x*T2").unwrap(), &Default::default()).unwrap());
    }

    #[test]
    fn zero_generator_gives_linear_relation() {
        let b = base(PrimeField::default(), &["x"]);
        let pres = rees_ideal(&b, &b.ring().parse_list("x, 0").unwrap(), &Config::default()).unwrap();
        let s = pres.ring();
        assert!(ideal_equal(s, pres.relations(), &s.parse_list("T2").unwrap(), &Default::default()).unwrap());
    }

    #[test]
    fn presentation_names_avoid_collisions() {
        let b = base(PrimeField::default(), &["T1", "t"]);
        let pres = rees_ideal(&b, &b.ring().parse_list("T1, t").unwrap(), &Config::default()).unwrap();
        assert_eq!(pres.ring().var_names(), &["T1", "t", "U1", "U2"]);
        assert_eq!(pres.relations().len(), 1);
    }
}
