use crate::bgdkit::{module_tensor, trivial_module};
use crate::cgdkit::apply_pair;
use crate::error::{Error, Result};
use crate::exactfield::{Acc, LinMap, SVec};
use crate::modkit::{check_bimodule, hom_modules, Bimodule, HomSpace, QuotientPresentation, Tensor};

use super::cell::OneCell;

/// `Hom_B(P, M)` with its right `A`-action `(μ◁a)(p) = μ(a▷p)`.
#[derive(Clone, Debug)]
pub struct HaModule {
    pub hom: HomSpace,
    pub module: Bimodule,
}

fn coords_or_err(space: &HomSpace, m: &LinMap, what: &str) -> Result<SVec> {
    space.coords(m).ok_or_else(|| Error::ill_defined(format!("{what} leaves the Hom space")))
}

pub fn hp_apply(p: &OneCell, m: &Bimodule) -> Result<HaModule> {
    if m.right != p.from.total {
        return Err(Error::invalid("module is not over the cell's source algebra"));
    }
    let hom = hom_modules(&p.right_module(), m)?;
    let d = hom.dim();
    let acts = p
        .carrier
        .left_act
        .iter()
        .map(|l| {
            let cols = hom
                .basis
                .iter()
                .map(|mu| coords_or_err(&hom, &mu.compose(l), "precomposition with the A-action"))
                .collect::<Result<Vec<_>>>()?;
            Ok(LinMap::new(p.field(), d, cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = Bimodule::right_module(p.to.total.clone(), d, acts)?;
    let rep = check_bimodule(&module);
    if !rep.pass() {
        return Err(Error::ill_defined(format!("Ha(P)(M) fails {}", rep.failures().join(", "))));
    }
    Ok(HaModule { hom, module })
}

/// The map `μ ⊗ ν ↦ (μ ⊗ ν) ∘ Δ_P` from a tensor quotient of two Hom spaces
/// into `Hom_B(P, M ⊗_S N)`, checked to descend to the quotient.
pub fn evaluation_map(
    p: &OneCell,
    left: &[LinMap],
    right: &[LinMap],
    dom: &Tensor,
    mn: &Tensor,
    cod: &HomSpace,
) -> Result<LinMap> {
    let f = p.field();
    let n = p.dim();
    let images = left
        .iter()
        .flat_map(|mu| right.iter().map(move |nu| (mu, nu)))
        .map(|(mu, nu)| {
            let m = LinMap::from_fn(f, n, mn.dim(), |i| mn.project(&apply_pair(p.delta().col(i), n, mu, nu)));
            coords_or_err(cod, &m, "(μ⊗ν)∘Δ")
        })
        .collect::<Result<Vec<_>>>()?;
    dom.q.induce(&QuotientPresentation::trivial(f, cod.dim()), |v| {
        let mut acc = Acc::new();
        for (k, x) in v.iter() {
            acc.add_vec(x, &images[*k]);
        }
        acc.into_svec()
    })
}

/// The monoidal structure maps of `Ha(P)` at `(M, N)`.
#[derive(Clone, Debug)]
pub struct MonoidalMaps {
    pub ha_m: HaModule,
    pub ha_n: HaModule,
    /// `Ha(M) ⊗_R Ha(N)`.
    pub domain: Tensor,
    /// `M ⊗_S N` and `Ha(M ⊗_S N)`.
    pub mn: Tensor,
    pub ha_mn: HaModule,
    pub map2: LinMap,
    /// `Ha(S)` for the trivial module and `R → Ha(S)`, `r ↦ ε_P(r.−)`.
    pub ha_unit: HaModule,
    pub map0: LinMap,
}

impl MonoidalMaps {
    pub fn map2_invertible(&self) -> bool {
        is_invertible(&self.map2)
    }

    pub fn map0_invertible(&self) -> bool {
        is_invertible(&self.map0)
    }
}

pub fn is_invertible(m: &LinMap) -> bool {
    m.src() == m.tgt() && m.rank() == m.src()
}

/// `R → Hom_B(P, S)`, `r ↦ ε_P(s_A(r) ▷ −)`.
pub fn unit_map(p: &OneCell, unit_space: &HomSpace) -> Result<LinMap> {
    let rd = p.to.base.dim();
    let cols = (0..rd)
        .map(|i| {
            let m = p.epsilon().compose(&p.carrier.left_op(p.to.s.map.col(i)));
            coords_or_err(unit_space, &m, "ε_P(r.−)")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinMap::new(p.field(), unit_space.dim(), cols))
}

pub fn hp_monoidal_maps(p: &OneCell, m: &Bimodule, n: &Bimodule) -> Result<MonoidalMaps> {
    let ha_m = hp_apply(p, m)?;
    let ha_n = hp_apply(p, n)?;
    let (domain, _) = module_tensor(&p.to, &ha_m.module, &ha_n.module)?;
    let (mn, mn_mod) = module_tensor(&p.from, m, n)?;
    let ha_mn = hp_apply(p, &mn_mod)?;
    let map2 = evaluation_map(p, &ha_m.hom.basis, &ha_n.hom.basis, &domain, &mn, &ha_mn.hom)?;
    let triv = trivial_module(&p.from)?;
    let ha_unit = hp_apply(p, &triv)?;
    let map0 = unit_map(p, &ha_unit.hom)?;
    Ok(MonoidalMaps { ha_m, ha_n, domain, mn, ha_mn, map2, ha_unit, map0 })
}

/// `Ha(f)`: `μ ↦ f ∘ μ` between Hom spaces.
pub fn ha_on_map(src: &HomSpace, tgt: &HomSpace, f: &LinMap) -> Result<LinMap> {
    let cols =
        src.basis.iter().map(|mu| coords_or_err(tgt, &f.compose(mu), "postcomposition")).collect::<Result<Vec<_>>>()?;
    Ok(LinMap::new(f.field(), tgt.dim(), cols))
}

/// Whether `map2` is natural in the first variable along the module map `f: M → M'`.
pub fn map2_naturality(p: &OneCell, m: &Bimodule, m2: &Bimodule, f: &LinMap, n: &Bimodule) -> Result<bool> {
    let a = hp_monoidal_maps(p, m, n)?;
    let b = hp_monoidal_maps(p, m2, n)?;
    let ha_f = ha_on_map(&a.ha_m.hom, &b.ha_m.hom, f)?;
    let id_n = LinMap::identity(p.field(), a.ha_n.hom.dim());
    let left = b.map2.compose(&a.domain.induce_pair(&b.domain, &ha_f, &id_n)?);
    let f_id = a.mn.induce_pair(&b.mn, f, &LinMap::identity(p.field(), n.dim))?;
    let right = ha_on_map(&a.ha_mn.hom, &b.ha_mn.hom, &f_id)?.compose(&a.map2);
    Ok(left == right)
}
