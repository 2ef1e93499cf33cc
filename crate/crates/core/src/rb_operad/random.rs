use rand::seq::SliceRandom;
use rand::Rng;

use super::RBExpr;

/// A random multilinear expression on `a_1..a_n` with at most `max_r_depth`
/// nested `R`s along any path.
pub fn random_expr<G: Rng + ?Sized>(rng: &mut G, n: usize, max_r_depth: usize) -> RBExpr {
    assert!(n >= 1, "arity must be at least 1");
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    build(rng, &labels, max_r_depth)
}

fn build<G: Rng + ?Sized>(rng: &mut G, labels: &[usize], depth: usize) -> RBExpr {
    if depth > 0 && rng.gen_bool(0.45) {
        return RBExpr::r(build(rng, labels, depth - 1));
    }
    if labels.len() == 1 {
        return RBExpr::leaf(labels[0]);
    }
    // split into 2..=len consecutive nonempty blocks
    let parts = rng.gen_range(2..=labels.len());
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut children = Vec::with_capacity(parts);
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(labels.len())) {
        children.push(build(rng, &labels[start..end], depth));
        start = end;
    }
    RBExpr::mul(children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_bounds_and_is_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let e = random_expr(&mut a, 4, 3);
            assert!(e.r_depth() <= 3);
            assert_eq!(e.arity(), 4);
            e.validate().unwrap();
            assert_eq!(e, random_expr(&mut b, 4, 3));
        }
    }
}
