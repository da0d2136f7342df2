use std::collections::BTreeMap;
use std::fmt;

use crate::mf::{MatFac, MfError};
use crate::ring::{integer, Poly, RingCtx};

use super::character::{chern_character, HomologyClass};
use super::connection::Connection;
use super::ChernError;

/// A formal ℤ-combination `Σ n_k [E_k]` of factorizations of possibly different
/// potentials over one ring; multiplication is the tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    ctx: RingCtx,
    terms: Vec<(i64, MatFac)>,
}

impl KClass {
    pub fn zero(ctx: RingCtx) -> Self {
        KClass {
            ctx,
            terms: Vec::new(),
        }
    }

    /// `[𝟏]`, over the potential 0.
    pub fn unit(ctx: RingCtx) -> Self {
        Self::of(MatFac::unit(ctx))
    }

    pub fn of(m: MatFac) -> Self {
        KClass {
            ctx: m.ctx().clone(),
            terms: vec![(1, m)],
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn terms(&self) -> &[(i64, MatFac)] {
        &self.terms
    }

    fn same_ring(&self, other: &KClass) -> Result<(), ChernError> {
        if self.ctx != other.ctx {
            return Err(MfError::RingMismatch(self.ctx.to_string(), other.ctx.to_string()).into());
        }
        Ok(())
    }

    pub fn add(&self, other: &KClass) -> Result<KClass, ChernError> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(KClass {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: i64) -> KClass {
        let terms = if c == 0 {
            Vec::new()
        } else {
            self.terms.iter().map(|(k, m)| (k * c, m.clone())).collect()
        };
        KClass {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> KClass {
        self.scale(-1)
    }

    /// `[E]_f · [F]_g = [E⊗F]_{f+g}`, extended bilinearly.
    pub fn product(&self, other: &KClass) -> Result<KClass, ChernError> {
        self.same_ring(other)?;
        let mut terms = Vec::new();
        for (a, e) in &self.terms {
            for (b, f) in &other.terms {
                terms.push((a * b, e.tensor(f)?));
            }
        }
        Ok(KClass {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// The Chern character, one class per potential (computed with `d` as connection).
    pub fn chern(&self) -> Result<BTreeMap<Poly, HomologyClass>, ChernError> {
        let mut out: BTreeMap<Poly, HomologyClass> = BTreeMap::new();
        for (k, m) in &self.terms {
            let ch = chern_character(m, &Connection::trivial(m))?.scale(&integer(*k));
            let f = m.potential().clone();
            let sum = match out.remove(&f) {
                Some(prev) => prev.add(&ch)?,
                None => ch,
            };
            out.insert(f, sum);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "{k}[rank ({}, {}) over {}]",
                m.r0(),
                m.r1(),
                self.ctx.print(m.potential())
            )?;
        }
        Ok(())
    }
}
