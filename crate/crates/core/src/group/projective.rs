use super::cohomology::TwoCocycle;
use super::extension::{central_extension_from_cocycle, irrep_count_with_central_character};
use crate::error::{Error, Result};

/// Classes of `ψ`-regular elements: `ψ(g,x) = ψ(x,g)` for every `x` in the
/// centralizer of `g`.
pub fn regular_classes(psi: &TwoCocycle) -> Vec<usize> {
    let g = psi.group();
    g.classes()
        .iter()
        .enumerate()
        .filter(|(_, cls)| {
            let a = cls[0] as usize;
            (0..g.order()).all(|x| !g.commute(a, x) || psi.value(a, x) == psi.value(x, a))
        })
        .map(|(i, _)| i)
        .collect()
}

/// Number of irreducible `ψ`-projective representations.
pub fn projective_irrep_count(psi: &TwoCocycle) -> usize {
    regular_classes(psi).len()
}

/// As [`projective_irrep_count`], cross-checked against the irreducibles of
/// the explicit central extension with central character `z ↦ ζ^z`.
pub fn projective_irrep_count_checked(psi: &TwoCocycle) -> Result<usize> {
    let by_classes = projective_irrep_count(psi);
    let ext = central_extension_from_cocycle(psi)?;
    let by_extension = irrep_count_with_central_character(&ext, 1 % psi.modulus())?;
    if by_classes != by_extension {
        return Err(Error::integrity(format!(
            "projective irreducible count mismatch: {by_classes} regular classes vs {by_extension} from the extension"
        )));
    }
    Ok(by_classes)
}
