use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{check_alphabet, uncovered_words, Word};

use super::{FinitePermutation, GammaTable, VnTable};

pub const MAX_RANDOM_DEPTH: usize = 6;

fn rng_for(seed: u64, n: u8, depth: usize, salt: u8) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = n;
    key[9] = depth as u8;
    key[10] = salt;
    ChaCha8Rng::from_seed(key)
}

fn check(n: u8, depth: usize) -> Result<()> {
    check_alphabet(n)?;
    if depth > MAX_RANDOM_DEPTH {
        return Err(Error::input(format!("depth {depth} exceeds the cap {MAX_RANDOM_DEPTH}")));
    }
    Ok(())
}

/// A complete prefix code grown from the root by `k` leaf expansions,
/// never producing words longer than `depth`.
fn random_code(rng: &mut ChaCha8Rng, n: u8, depth: usize, k: usize) -> Vec<Word> {
    let mut leaves = vec![Word::empty()];
    for _ in 0..k {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < depth).collect();
        let i = *open.choose(rng).expect("k is at most depth, so an open leaf remains");
        let w = leaves.swap_remove(i);
        leaves.extend((1..=n).map(|a| w.child(a)));
    }
    leaves.sort();
    leaves
}

fn random_rows(rng: &mut ChaCha8Rng, n: u8, depth: usize) -> Vec<(Word, Word)> {
    let k = rng.gen_range(0..=depth);
    let src = random_code(rng, n, depth, k);
    let mut dst = random_code(rng, n, depth, k);
    dst.shuffle(rng);
    src.into_iter().zip(dst).collect()
}

/// A deterministic pseudorandom element of `Γ_n`: two random complete
/// prefix codes of bounded depth, a random matching of their leaves and a
/// random pairing of the uncovered words. A pure function of its inputs.
pub fn random_element(n: u8, depth: usize, seed: u64) -> Result<GammaTable> {
    check(n, depth)?;
    let mut rng = rng_for(seed, n, depth, 0);
    let cyl = random_rows(&mut rng, n, depth);
    let srcs: Vec<Word> = cyl.iter().map(|r| r.0.clone()).collect();
    let dsts: Vec<Word> = cyl.iter().map(|r| r.1.clone()).collect();
    let mut free = uncovered_words(&dsts);
    free.shuffle(&mut rng);
    let pts = uncovered_words(&srcs).into_iter().zip(free).collect();
    GammaTable::from_rows(n, cyl, pts)
}

pub fn random_vn(n: u8, depth: usize, seed: u64) -> Result<VnTable> {
    check(n, depth)?;
    let mut rng = rng_for(seed, n, depth, 1);
    VnTable::new(n, random_rows(&mut rng, n, depth))
}

/// A random permutation of the words of length at most `depth`.
pub fn random_permutation(n: u8, depth: usize, seed: u64) -> Result<FinitePermutation> {
    check(n, depth)?;
    let mut rng = rng_for(seed, n, depth, 2);
    let words = Word::all_up_to(n, depth);
    let moved = rng.gen_range(2..=words.len().clamp(2, 4));
    let chosen: Vec<Word> = words.choose_multiple(&mut rng, moved).cloned().collect();
    let mut images = chosen.clone();
    images.shuffle(&mut rng);
    FinitePermutation::from_pairs(n, &chosen.into_iter().zip(images).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..50 {
            let a = random_element(2, 4, seed).unwrap();
            assert_eq!(a, random_element(2, 4, seed).unwrap());
            let again = GammaTable::from_rows(2, a.cyl_rows().to_vec(), a.pt_rows().to_vec()).unwrap();
            assert_eq!(again, a);
        }
        assert!(random_element(2, 7, 0).is_err());
        assert!(random_element(3, 0, 5).unwrap().is_identity());
    }

    #[test]
    fn permutations_stay_shallow() {
        for seed in 0..20 {
            let p = random_permutation(2, 2, seed).unwrap();
            assert!(p.support_depth().unwrap_or(0) <= 2);
        }
    }
}
