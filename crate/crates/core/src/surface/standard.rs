//! Built-in skeletons. All ship with zero rotation numbers.

use super::{Skeleton, SkeletonFile};

fn build(vertices: &[(&str, &[&str])], edges: &[(&str, &str, &str)]) -> Skeleton {
    SkeletonFile::from_names(vertices, edges).to_skeleton().expect("built-in skeleton is valid")
}

/// One vertex, two interleaved loops: the once-punctured torus.
pub fn torus() -> Skeleton {
    build(&[("v0", &["a+", "b+", "a-", "b-"])], &[("a", "a+", "a-"), ("b", "b+", "b-")])
}

/// One vertex, two nested loops: the pair of pants.
pub fn pants() -> Skeleton {
    build(&[("v0", &["a+", "a-", "b+", "b-"])], &[("a", "a+", "a-"), ("b", "b+", "b-")])
}

/// One vertex, two interleaved pairs: genus two with one boundary circle.
pub fn genus2() -> Skeleton {
    build(
        &[("v0", &["a+", "b+", "a-", "b-", "c+", "d+", "c-", "d-"])],
        &[("a", "a+", "a-"), ("b", "b+", "b-"), ("c", "c+", "c-"), ("d", "d+", "d-")],
    )
}

/// Two vertices joined by one edge: a disk with two marked points.
pub fn path() -> Skeleton {
    build(&[("v0", &["a+"]), ("v1", &["a-"])], &[("a", "a+", "a-")])
}

/// Two vertices joined by three edges (planar): a pair of pants with two
/// marked points on different boundary circles.
pub fn theta() -> Skeleton {
    build(
        &[("v0", &["a+", "b+", "c+"]), ("v1", &["c-", "b-", "a-"])],
        &[("a", "a+", "a-"), ("b", "b+", "b-"), ("c", "c+", "c-")],
    )
}

/// Looks up a built-in skeleton by name.
pub fn by_name(name: &str) -> Option<Skeleton> {
    match name {
        "torus" => Some(torus()),
        "pants" => Some(pants()),
        "genus2" => Some(genus2()),
        "path" => Some(path()),
        "theta" => Some(theta()),
        _ => None,
    }
}
