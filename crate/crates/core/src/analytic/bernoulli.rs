use super::real::Real;

/// Numerators and denominators of B_2, B_4, ..., B_40.
const BERNOULLI_2K: [(i128, i128); 20] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
    (-26315271553053477373, 1919190),
    (2929993913841559, 6),
    (-261082718496449122051, 13530),
];

pub const MAX_K: usize = BERNOULLI_2K.len();

/// B_{2k} for 1 <= k <= 20.
pub fn bernoulli_2k<R: Real>(k: usize) -> R {
    assert!((1..=MAX_K).contains(&k), "Bernoulli index {k} out of range");
    let (n, d) = BERNOULLI_2K[k - 1];
    R::from_ratio(n, d)
}
