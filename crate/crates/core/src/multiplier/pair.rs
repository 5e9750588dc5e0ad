use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::{h2_bar, induced_h2, multiplier_pc_tails, H2Result};
use crate::error::{Error, Result};
use crate::group::{find_complement, FiniteGroup, GroupHom, Subgroup};
use crate::pc::{pc_presentation_of, PcPresentation};
use crate::zlinalg::{abelian_hom_kernel, AbelianStructure};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Backend {
    #[serde(rename = "bar")]
    Bar,
    #[serde(rename = "pc-tails")]
    PcTails,
    #[serde(rename = "split-sum")]
    SplitSum,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Bar => "bar",
            Backend::PcTails => "pc-tails",
            Backend::SplitSum => "split-sum",
        })
    }
}

/// Backend request for `M(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendChoice {
    Bar,
    Pc,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairMultiplier {
    pub structure: AbelianStructure,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub exponent: BigInt,
    pub backend: Backend,
}

impl PairMultiplier {
    fn new(structure: AbelianStructure, backend: Backend) -> Self {
        PairMultiplier {
            exponent: structure.exponent(),
            structure,
            backend,
        }
    }
}

/// A pc presentation for `g`: the stored one, or one derived from a central
/// series when `g` is nilpotent.
pub fn presentation_for(g: &FiniteGroup) -> Result<PcPresentation> {
    match g.presentation() {
        Some(p) => Ok((**p).clone()),
        None => Ok(pc_presentation_of(g)?.0),
    }
}

/// `M(G)` with the chosen backend.
pub fn schur_multiplier(
    g: &FiniteGroup,
    choice: BackendChoice,
    caps: &Caps,
) -> Result<(AbelianStructure, Backend)> {
    let use_bar = match choice {
        BackendChoice::Bar => true,
        BackendChoice::Pc => false,
        BackendChoice::Auto => g.order() <= caps.bar,
    };
    if use_bar {
        Ok((h2_bar(g, caps.bar)?.structure, Backend::Bar))
    } else {
        Ok((
            multiplier_pc_tails(&presentation_for(g)?)?,
            Backend::PcTails,
        ))
    }
}

/// Checks that `k` complements `n`.
fn check_complement(n: &Subgroup, k: &Subgroup) -> Result<()> {
    let g = n.parent();
    if k.parent() != g {
        return Err(Error::NoComplement(
            "complement lives in a different group".into(),
        ));
    }
    if !n.intersection(k).is_trivial() || n.order() * k.order() != g.order() {
        return Err(Error::NoComplement(format!(
            "subgroup of order {} does not complement N of order {}",
            k.order(),
            n.order()
        )));
    }
    Ok(())
}

/// The retraction `G -> K` with kernel `N`, onto `K` as a standalone group.
pub fn retraction(n: &Subgroup, k: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    let g = n.parent();
    let (kg, embed) = k.to_group();
    let mut image = vec![usize::MAX; g.order()];
    for (ki, &y) in embed.iter().enumerate() {
        for &x in n.members() {
            image[g.mul(x, y)] = ki;
        }
    }
    let hom = GroupHom::new_unchecked(g, &kg, image)?;
    Ok((kg, hom))
}

/// `M(G, N)` for `N = G` or a split pair `G = N K`. Missing complements
/// are searched for; non-split pairs are refused.
pub fn pair_multiplier(n: &Subgroup, k: Option<&Subgroup>, caps: &Caps) -> Result<PairMultiplier> {
    pair_multiplier_using(n, k, caps, None)
}

/// [`pair_multiplier`] reusing a bar computation of `H_2(G)`.
pub fn pair_multiplier_using(
    n: &Subgroup,
    k: Option<&Subgroup>,
    caps: &Caps,
    hg: Option<&H2Result>,
) -> Result<PairMultiplier> {
    let g = n.parent();
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        return Ok(PairMultiplier::new(
            AbelianStructure::trivial(),
            Backend::Bar,
        ));
    }
    if n.is_whole() {
        if let Some(h) = hg {
            return Ok(PairMultiplier::new(h.structure.clone(), Backend::Bar));
        }
        let (m, b) = schur_multiplier(g, BackendChoice::Auto, caps)?;
        return Ok(PairMultiplier::new(m, b));
    }
    let found;
    let k = match k {
        Some(k) => k,
        None => {
            found = find_complement(n, caps.complement)?
                .ok_or_else(|| Error::NoComplement("N has no complement in G".into()))?;
            &found
        }
    };
    check_complement(n, k)?;
    if g.order() <= caps.bar {
        let (kg, pi) = retraction(n, k)?;
        let own;
        let hg = match hg {
            Some(h) => h,
            None => {
                own = h2_bar(g, caps.bar)?;
                &own
            }
        };
        let hk = h2_bar(&kg, caps.bar)?;
        let mat = induced_h2(&pi, hg, &hk)?;
        let ker = abelian_hom_kernel(&hg.structure, &hk.structure, &mat)?;
        return Ok(PairMultiplier::new(ker, Backend::Bar));
    }
    let mg = multiplier_pc_tails(&presentation_for(g)?)?;
    let (kg, _) = k.to_group();
    let (mk, _) = schur_multiplier(&kg, BackendChoice::Auto, caps)?;
    if mk.is_trivial() {
        return Ok(PairMultiplier::new(mg, Backend::PcTails));
    }
    let rest = mg
        .cancel(&mk)?
        .ok_or_else(|| Error::Invalid(format!("M(K) = {mk} is not a summand of M(G) = {mg}")))?;
    Ok(PairMultiplier::new(rest, Backend::SplitSum))
}
