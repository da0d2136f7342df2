//! Gröbner bases for ideals of `Q[x1..xn]` and for submodules of the free modules
//! `Ω^k`, used to pick canonical representatives in `Ω^k / df∧Ω^{k-1}`.

mod engine;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::exterior::{blades_of_degree, Blade, Form};
use crate::ring::{MonomialOrder, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealsError {
    #[error("form degree {k} out of range 1..={n}")]
    DegreeOutOfRange { k: usize, n: usize },
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
}

/// A reduced, monic Gröbner basis of an ideal, sorted by decreasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Poly>,
}

/// Buchberger's algorithm. Zero generators are dropped; if nothing is left the
/// result is the basis of the zero ideal.
pub fn buchberger(gens: &[Poly], nvars: usize, order: MonomialOrder) -> GroebnerBasis {
    let vs: Vec<Vec<Poly>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| vec![g.clone()])
        .collect();
    let generators = engine::groebner(&vs, order)
        .into_iter()
        .map(|mut v| v.pop().expect("rank one"))
        .collect();
    GroebnerBasis {
        nvars,
        order,
        generators,
    }
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn as_vectors(&self) -> (Vec<Vec<Poly>>, Vec<engine::Lead>) {
        let vs: Vec<Vec<Poly>> = self.generators.iter().map(|g| vec![g.clone()]).collect();
        let leads = vs
            .iter()
            .map(|v| engine::lead(v, self.order).expect("nonzero"))
            .collect();
        (vs, leads)
    }

    /// The remainder of multivariate division by the basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(
            p.nvars(),
            self.nvars,
            "normal form in a ring of the wrong size"
        );
        let (vs, leads) = self.as_vectors();
        engine::reduce(std::slice::from_ref(p), &vs, &leads, self.order)
            .pop()
            .expect("rank one")
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Re-checks that every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        engine::satisfies_buchberger_criterion(&self.as_vectors().0, self.order)
    }
}

/// A Gröbner basis of a submodule of `Q^rank` in the position-over-term order
/// (position 0 largest, then the ring order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleGB {
    rank: usize,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Vec<Poly>>,
}

impl ModuleGB {
    pub fn new(gens: &[Vec<Poly>], rank: usize, nvars: usize, order: MonomialOrder) -> Self {
        assert!(
            gens.iter().all(|g| g.len() == rank),
            "generator of the wrong rank"
        );
        let gens: Vec<Vec<Poly>> = gens
            .iter()
            .filter(|g| !engine::is_zero(g))
            .cloned()
            .collect();
        ModuleGB {
            rank,
            nvars,
            order,
            generators: engine::groebner(&gens, order),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.generators
    }

    pub fn is_zero_module(&self) -> bool {
        self.generators.is_empty()
    }

    fn leads(&self) -> Vec<engine::Lead> {
        self.generators
            .iter()
            .map(|v| engine::lead(v, self.order).expect("nonzero"))
            .collect()
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.rank, "vector of the wrong rank");
        engine::reduce(v, &self.generators, &self.leads(), self.order)
    }

    pub fn verify_s_pairs(&self) -> bool {
        engine::satisfies_buchberger_criterion(&self.generators, self.order)
    }
}

fn form_to_vector(w: &Form, positions: &[Blade]) -> Vec<Poly> {
    positions.iter().map(|b| w.coefficient(*b)).collect()
}

fn vector_to_form(v: Vec<Poly>, positions: &[Blade], nvars: usize) -> Form {
    let mut w = Form::zero(nvars);
    for (p, b) in v.into_iter().zip(positions) {
        w += &Form::from_term(p, &b.indices()).expect("valid blade");
    }
    w
}

fn build_df_image(f: &Poly, k: usize, order: MonomialOrder) -> ModuleGB {
    let n = f.nvars();
    let df = Form::differential(f);
    let positions = blades_of_degree(n, k);
    let gens: Vec<Vec<Poly>> = blades_of_degree(n, k - 1)
        .into_iter()
        .map(|b| {
            let dxk = Form::from_term(Poly::one(n), &b.indices()).expect("valid blade");
            form_to_vector(&df.wedge(&dxk), &positions)
        })
        .collect();
    ModuleGB::new(&gens, positions.len(), n, order)
}

type CacheKey = (Poly, usize, MonomialOrder);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<ModuleGB>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<ModuleGB>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The Gröbner basis of `df∧Ω^{k-1} ⊆ Ω^k`, whose positions are the `k`-subsets in
/// lexicographic order. Bases are computed once per `(f, k, order)` and shared.
pub fn df_image_module_gb(
    f: &Poly,
    k: usize,
    order: MonomialOrder,
) -> Result<Arc<ModuleGB>, IdealsError> {
    let n = f.nvars();
    if k == 0 || k > n {
        return Err(IdealsError::DegreeOutOfRange { k, n });
    }
    let key = (f.clone(), k, order);
    if let Some(gb) = cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(gb));
    }
    let gb = Arc::new(build_df_image(f, k, order));
    let mut map = cache().write().expect("cache poisoned");
    Ok(Arc::clone(map.entry(key).or_insert(gb)))
}

/// The canonical representative of a homogeneous `k`-form modulo `df∧Ω^{k-1}`.
/// Two forms are equal in the quotient iff their normal forms are identical.
pub fn form_normal_form(w: &Form, f: &Poly, order: MonomialOrder) -> Result<Form, IdealsError> {
    if w.nvars() != f.nvars() {
        return Err(IdealsError::VariableCountMismatch {
            left: w.nvars(),
            right: f.nvars(),
        });
    }
    let Some(k) = w.degree() else {
        return if w.is_zero() {
            Ok(w.clone())
        } else {
            Err(IdealsError::NotHomogeneous)
        };
    };
    if k == 0 {
        return Ok(w.clone());
    }
    let gb = df_image_module_gb(f, k, order)?;
    let positions = blades_of_degree(f.nvars(), k);
    let v = gb.normal_form(&form_to_vector(w, &positions));
    Ok(vector_to_form(v, &positions, f.nvars()))
}
