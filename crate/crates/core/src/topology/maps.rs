use serde::Serialize;

use super::{FiniteSpace, PointSet};
use crate::error::{Error, Result};

/// Properties of a point map between finite spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MapCheck {
    pub injective: bool,
    pub surjective: bool,
    pub continuous: bool,
    /// Homeomorphism onto the image with its subspace topology.
    pub embedding: bool,
    pub homeomorphism: bool,
}

/// Classifies `map: src → dst`, given as the image index of each source point.
///
/// Continuity is tested on preimages of the minimal open neighbourhoods of
/// `dst`, which generate its topology. The embedding test compares the
/// transported source closures with the closures of the subspace on the image.
pub fn check_map(src: &FiniteSpace, dst: &FiniteSpace, map: &[usize]) -> Result<MapCheck> {
    if map.len() != src.len() {
        return Err(Error::InvalidSpace(format!(
            "map has {} entries for {} points",
            map.len(),
            src.len()
        )));
    }
    if let Some(&y) = map.iter().find(|&&y| y >= dst.len()) {
        return Err(Error::UnknownPoint(y.to_string()));
    }
    let image = PointSet::from_indices(dst.len(), map.iter().copied());
    let injective = image.len() == src.len();
    let surjective = image.is_full();
    let continuous = (0..dst.len()).all(|y| src.is_open(&dst.up(y).preimage(map)));
    let embedding = injective
        && continuous
        && (0..src.len()).all(|x| {
            src.point_closure(x).image(map, dst.len())
                == dst.point_closure(map[x]).intersection(&image)
        });
    Ok(MapCheck {
        injective,
        surjective,
        continuous,
        embedding,
        homeomorphism: embedding && surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_is_homeomorphism() {
        let s = fixtures::sierpinski();
        let c = check_map(&s, &s, &[0, 1]).unwrap();
        assert!(c.homeomorphism && c.continuous && c.injective && c.surjective);
    }

    #[test]
    fn swap_on_sierpinski_is_not_continuous() {
        let s = fixtures::sierpinski();
        let c = check_map(&s, &s, &[1, 0]).unwrap();
        assert!(c.injective && !c.continuous && !c.homeomorphism);
    }

    #[test]
    fn discrete_into_sierpinski_is_continuous_not_embedding() {
        let d = fixtures::discrete2();
        let s = fixtures::sierpinski();
        let c = check_map(&d, &s, &[0, 1]).unwrap();
        assert!(c.continuous && c.injective && !c.embedding);
    }

    #[test]
    fn subspace_inclusion_is_embedding() {
        let c3 = fixtures::chain3();
        let u = PointSet::from_indices(3, [0, 2]);
        let sub = c3.subspace(&u);
        let c = check_map(&sub, &c3, &[0, 2]).unwrap();
        assert!(c.embedding && !c.surjective);
    }

    #[test]
    fn bad_maps_are_rejected() {
        let s = fixtures::sierpinski();
        assert!(check_map(&s, &s, &[0]).is_err());
        assert!(check_map(&s, &s, &[0, 5]).is_err());
    }
}
