//! Helpers shared by the acceptance and property suites: a pool of small
//! ideals and the generator-set transformations that must not change rt.
#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use reltype::geometry::rt_affine_scheme;
use reltype::{Config, Field, Poly, PrimeField, Ring};

pub fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Homogeneous test ideals: variables, generators, relation type.
pub const POOL: &[(&[&str], &str, u32)] = &[
    (&["x", "y"], "x^2, x*y, y^2", 2),
    (&["x", "y"], "x^3, x^2*y, x*y^2, y^3", 2),
    (&["x", "y"], "x^2, y^2", 1),
    (&["x", "y"], "x^3, x*y^2, y^3", 3),
    (&["x", "y", "z"], "x*y, y*z, x*z", 1),
    (&["x", "y", "z"], "x^2, x*y, y^2", 2),
    (&["x", "y", "z"], "x*y*z, x^2*z - x*z^2, y^2*z - y*z^2", 1),
    (&["x", "y", "z"], "x^2 - y*z, x*y, z^2", 1),
];

pub fn pool_ideal<F: Field>(field: F, i: usize) -> (Arc<Ring<F>>, Vec<Poly<F>>, u32) {
    let (vars, gens, rt) = POOL[i];
    let ring = Ring::polynomial(field, vars).unwrap();
    let f = ring.parse_list(gens).unwrap();
    (ring, f, rt)
}

/// Relation type of `(gens)`, which must be computed exactly.
pub fn rt<F: Field>(ring: &Arc<Ring<F>>, gens: &[Poly<F>], config: &Config) -> u32 {
    let report = rt_affine_scheme(ring, gens, config).unwrap();
    assert!(report.exact, "capped computation");
    report.rt
}

fn random_unit<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let c = field.from_i64(rng.gen_range(-50..=50));
        if !field.is_zero(&c) {
            return c;
        }
    }
}

pub fn permuted<F: Field, R: Rng>(gens: &[Poly<F>], rng: &mut R) -> Vec<Poly<F>> {
    let mut out = gens.to_vec();
    out.shuffle(rng);
    out
}

pub fn scaled<F: Field, R: Rng>(gens: &[Poly<F>], rng: &mut R) -> Vec<Poly<F>> {
    gens.iter().map(|g| g.scale(&random_unit(g.field(), rng))).collect()
}

/// Appends `sum c_i m_i f_i` with monomial multipliers `m_i` chosen so the
/// new generator is homogeneous of degree one more than the largest `f_i`.
pub fn with_redundant<F: Field, R: Rng>(ring: &Arc<Ring<F>>, gens: &[Poly<F>], rng: &mut R) -> Vec<Poly<F>> {
    let top = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0) + 1;
    let mut extra = ring.zero();
    for g in gens {
        let mut m = ring.one();
        for _ in g.total_degree().unwrap_or(0)..top {
            m = &m * &ring.gen(rng.gen_range(0..ring.nvars()));
        }
        let c = ring.constant(random_unit(ring.field(), rng));
        extra = &extra + &(&(&c * &m) * g);
    }
    let mut out = gens.to_vec();
    out.insert(rng.gen_range(0..=out.len()), extra);
    out
}

/// Applies a random invertible linear change of the variables.
pub fn linearly_substituted<F: Field, R: Rng>(ring: &Arc<Ring<F>>, gens: &[Poly<F>], rng: &mut R) -> Vec<Poly<F>> {
    let n = ring.nvars();
    // unit lower times unit upper triangular is invertible
    let mut lower = vec![vec![0i64; n]; n];
    let mut upper = vec![vec![0i64; n]; n];
    for i in 0..n {
        lower[i][i] = 1;
        upper[i][i] = 1;
        for j in 0..i {
            lower[i][j] = rng.gen_range(-5..=5);
            upper[j][i] = rng.gen_range(-5..=5);
        }
    }
    let images: Vec<Poly<F>> = (0..n)
        .map(|i| {
            let mut p = ring.zero();
            for j in 0..n {
                let c: i64 = (0..n).map(|k| lower[i][k] * upper[k][j]).sum();
                p = &p + &(&ring.int(c) * &ring.gen(j));
            }
            p
        })
        .collect();
    gens.iter().map(|g| g.substitute(ring, &images).unwrap()).collect()
}

/// `I + J` in the ring with the variables of both, the second set renamed.
pub fn disjoint_union<F: Field>(
    a: (&Arc<Ring<F>>, &[Poly<F>]),
    b: (&Arc<Ring<F>>, &[Poly<F>]),
) -> (Arc<Ring<F>>, Vec<Poly<F>>) {
    let mut names: Vec<String> = a.0.var_names().to_vec();
    let offset = names.len();
    names.extend((0..b.0.nvars()).map(|i| format!("{}_2", b.0.var_name(i))));
    let ring = Ring::polynomial(a.0.field().clone(), &names).unwrap();
    let map_a: Vec<usize> = (0..offset).collect();
    let map_b: Vec<usize> = (offset..names.len()).collect();
    let mut gens: Vec<Poly<F>> = a.1.iter().map(|g| g.map_vars(&ring, &map_a)).collect();
    gens.extend(b.1.iter().map(|g| g.map_vars(&ring, &map_b)));
    (ring, gens)
}
