use crate::exterior::FormMatrix;
use crate::ideals::form_normal_form;
use crate::mf::{MatFac, StrictMorphism};
use crate::ring::RingMap;

use super::character::{chern_character, HomologyClass};
use super::connection::Connection;
use super::{ChernError, Verdict};

fn compare_classes(what: &str, lhs: &HomologyClass, rhs: &HomologyClass) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(format!("{what}: {lhs} vs {rhs}"))
    }
}

/// The connection on `cone(θ)` induced by connections on source `M` and target `N`:
/// `diag(∇₀^N, ∇₁^M)` on `N0 ⊕ M1` and `diag(∇₁^N, ∇₀^M)` on `N1 ⊕ M0`.
pub fn cone_connection(
    theta: &StrictMorphism,
    on_source: &Connection,
    on_target: &Connection,
) -> Connection {
    let g0 = on_target.gamma0().direct_sum(on_source.gamma1());
    let g1 = on_target.gamma1().direct_sum(on_source.gamma0());
    Connection::new(&theta.cone().object, g0, g1).expect("block-diagonal connection fits the cone")
}

/// `ch(N) = ch(M) + ch(cone(θ))` for `θ: M -> N`, with the induced connection on the cone.
pub fn cone_additivity_check(
    theta: &StrictMorphism,
    on_source: &Connection,
    on_target: &Connection,
) -> Result<Verdict, ChernError> {
    let cone = theta.cone().object;
    let conn = cone_connection(theta, on_source, on_target);
    let ch_m = chern_character(theta.source(), on_source)?;
    let ch_n = chern_character(theta.target(), on_target)?;
    let ch_c = chern_character(&cone, &conn)?;
    Ok(compare_classes(
        "ch(N) = ch(M) + ch(cone)",
        &ch_n,
        &ch_m.add(&ch_c)?,
    ))
}

/// `∇^E ⊗ 1 + 1 ⊗ ∇^F` on each summand `Ei ⊗ Fj` of `E ⊗ F`, in the summand order
/// of [`MatFac::tensor`].
pub fn tensor_connection(e: &MatFac, ce: &Connection, f: &MatFac, cf: &Connection) -> Connection {
    let nv = e.nvars();
    let block = |ge: &FormMatrix, re: usize, gf: &FormMatrix, rf: usize| {
        ge.kron(&FormMatrix::identity(rf, nv))
            .add(&FormMatrix::identity(re, nv).kron(gf))
    };
    let (e0, e1, f0, f1) = (e.r0(), e.r1(), f.r0(), f.r1());
    let g0 = block(ce.gamma0(), e0, cf.gamma0(), f0).direct_sum(&block(
        ce.gamma1(),
        e1,
        cf.gamma1(),
        f1,
    ));
    let g1 = block(ce.gamma1(), e1, cf.gamma0(), f0).direct_sum(&block(
        ce.gamma0(),
        e0,
        cf.gamma1(),
        f1,
    ));
    let t = e.tensor(f).expect("same ring");
    Connection::new(&t, g0, g1).expect("tensor connection fits the tensor product")
}

/// `ch(E ⊗ F) = ch(E) ∧ ch(F)` in the homology over `f + g`.
pub fn tensor_multiplicativity_check(
    e: &MatFac,
    ce: &Connection,
    f: &MatFac,
    cf: &Connection,
) -> Result<Verdict, ChernError> {
    let t = e.tensor(f)?;
    let ct = tensor_connection(e, ce, f, cf);
    let lhs = chern_character(&t, &ct)?;
    let rhs = chern_character(e, ce)?.wedge(&chern_character(f, cf)?)?;
    Ok(compare_classes("ch(E⊗F) = ch(E)ch(F)", &lhs, &rhs))
}

/// `φ_* M`: entrywise substitution of the blocks along the ring map.
pub fn pushforward(m: &MatFac, phi: &RingMap) -> Result<MatFac, ChernError> {
    Ok(m.map_ring(phi)?)
}

/// The connection `μ(∇ ⊗ 1) + d` on `φ_* M`: `Γ` is pushed forward entrywise.
pub fn pushforward_connection(
    m: &MatFac,
    conn: &Connection,
    phi: &RingMap,
) -> Result<Connection, ChernError> {
    let target = pushforward(m, phi)?;
    let n = phi.target().nvars();
    let g0 = conn.gamma0().substitute(phi.images(), n)?;
    let g1 = conn.gamma1().substitute(phi.images(), n)?;
    Connection::new(&target, g0, g1)
}

/// `φ_* ch(M) = ch(φ_* M)` for a map between rings of the same dimension.
pub fn functoriality_check(
    m: &MatFac,
    conn: &Connection,
    phi: &RingMap,
) -> Result<Verdict, ChernError> {
    let (sv, tv) = (phi.source().nvars(), phi.target().nvars());
    if sv != tv {
        return Err(ChernError::DimensionMismatch {
            source_vars: sv,
            target_vars: tv,
        });
    }
    let pushed = pushforward(m, phi)?;
    let lhs = chern_character(&pushed, &pushforward_connection(m, conn, phi)?)?;
    let g = pushed.potential();
    let ch = chern_character(m, conn)?;
    let mut forms = Vec::new();
    for w in ch.components() {
        let image = w.substitute(phi.images(), tv)?;
        forms.push(form_normal_form(&image, g, phi.target().order())?);
    }
    let rhs = HomologyClass::from_components(phi.target().clone(), g.clone(), forms)?;
    Ok(compare_classes("ch(φ_* M) = φ_* ch(M)", &lhs, &rhs))
}
