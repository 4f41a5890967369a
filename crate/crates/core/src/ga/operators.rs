use rand::Rng;

use crate::chromosome::{check_same_len, Chromosome};
use crate::error::{GaError, Result};
use crate::ga::individual::Individual;
use crate::scalar::Scalar;

/// Tournament selection with replacement.
///
/// Draws `k` member indices uniformly with replacement and returns the index
/// of the fittest draw; ties go to the earliest draw.
pub fn tournament_select<T: Scalar, R: Rng + ?Sized>(
    members: &[Individual<T>],
    k: usize,
    rng: &mut R,
) -> Result<usize> {
    if members.is_empty() {
        return Err(GaError::InvalidState(
            "tournament over an empty population".into(),
        ));
    }
    if k == 0 {
        return Err(GaError::InvalidState(
            "tournament size must be at least 1".into(),
        ));
    }
    let draws: Vec<usize> = (0..k).map(|_| rng.random_range(0..members.len())).collect();
    Ok(tournament_winner(members, &draws))
}

/// Winner among already drawn indices: highest fitness, earliest draw on ties.
pub fn tournament_winner<T: Scalar>(members: &[Individual<T>], draws: &[usize]) -> usize {
    let mut winner = draws[0];
    for &challenger in &draws[1..] {
        if members[challenger].fitness > members[winner].fitness {
            winner = challenger;
        }
    }
    winner
}

/// Crossover at a fixed cut point `cut` in `1..len`.
pub fn crossover_at(
    p1: &Chromosome,
    p2: &Chromosome,
    cut: usize,
) -> Result<(Chromosome, Chromosome)> {
    check_same_len(p1, p2)?;
    let len = p1.len();
    if len < 2 {
        return Err(GaError::InvalidEncoding(format!(
            "crossover needs at least 2 genes, got {len}"
        )));
    }
    if cut == 0 || cut >= len {
        return Err(GaError::InvalidEncoding(format!(
            "cut point {cut} outside 1..{len}"
        )));
    }
    let (a, b) = (p1.bits(), p2.bits());
    let child1 = a[..cut]
        .iter()
        .chain(&b[cut..])
        .copied()
        .collect::<Vec<_>>();
    let child2 = b[..cut]
        .iter()
        .chain(&a[cut..])
        .copied()
        .collect::<Vec<_>>();
    Ok((child1.into(), child2.into()))
}

/// Single-point crossover with the cut drawn uniformly from `1..len`.
pub fn single_point_crossover<R: Rng + ?Sized>(
    p1: &Chromosome,
    p2: &Chromosome,
    rng: &mut R,
) -> Result<(Chromosome, Chromosome)> {
    single_point_crossover_traced(p1, p2, rng).map(|(c1, c2, _)| (c1, c2))
}

/// As [`single_point_crossover`], also returning the cut point.
pub fn single_point_crossover_traced<R: Rng + ?Sized>(
    p1: &Chromosome,
    p2: &Chromosome,
    rng: &mut R,
) -> Result<(Chromosome, Chromosome, usize)> {
    check_same_len(p1, p2)?;
    if p1.len() < 2 {
        return Err(GaError::InvalidEncoding(format!(
            "crossover needs at least 2 genes, got {}",
            p1.len()
        )));
    }
    let cut = rng.random_range(1..p1.len());
    let (c1, c2) = crossover_at(p1, p2, cut)?;
    Ok((c1, c2, cut))
}

/// Flips each gene independently with probability `p_m`; returns the flip count.
pub fn mutate_in_place<T: Scalar, R: Rng + ?Sized>(
    c: &mut Chromosome,
    p_m: T,
    rng: &mut R,
) -> usize {
    let p = p_m.as_f64();
    let mut flips = 0;
    for i in 0..c.len() {
        if rng.random::<f64>() < p {
            c.flip(i);
            flips += 1;
        }
    }
    flips
}

pub fn mutate<T: Scalar, R: Rng + ?Sized>(c: &Chromosome, p_m: T, rng: &mut R) -> Chromosome {
    let mut out = c.clone();
    mutate_in_place(&mut out, p_m, rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;

    fn ind(f: f64) -> Individual<f64> {
        Individual {
            chromosome: Chromosome::zeros(2),
            variables: vec![],
            objective: 0.0,
            fitness: f,
        }
    }

    fn chrom(s: &str) -> Chromosome {
        s.parse().unwrap()
    }

    #[test]
    fn tournament_picks_fitter_of_drawn_pair() {
        let members = vec![ind(0.9), ind(0.1)];
        assert_eq!(tournament_winner(&members, &[0, 1]), 0);
        assert_eq!(tournament_winner(&members, &[1, 0]), 0);
        assert_eq!(tournament_winner(&members, &[1, 1]), 1);
        let tied = vec![ind(0.5), ind(0.5)];
        assert_eq!(tournament_winner(&tied, &[1, 0]), 1);
        let mut rng = stream(7, 0);
        for _ in 0..200 {
            // With k = 2 the loser only wins when both draws hit it.
            let w = tournament_select(&members, 2, &mut rng).unwrap();
            assert!(w == 0 || w == 1);
        }
        // A large tournament over two members essentially always sees A.
        let w = tournament_select(&members, 64, &mut rng).unwrap();
        assert_eq!(w, 0);
    }

    #[test]
    fn tournament_single_member_and_empty() {
        let mut rng = stream(1, 0);
        assert_eq!(tournament_select(&[ind(0.3)], 2, &mut rng).unwrap(), 0);
        assert!(tournament_select::<f64, _>(&[], 2, &mut rng).is_err());
    }

    #[test]
    fn tournament_uniform_when_fitness_equal() {
        // Chi-square goodness of fit against uniform, 99% level.
        let p = 8;
        let members: Vec<_> = (0..p).map(|_| ind(0.5)).collect();
        let mut counts = vec![0usize; p];
        let mut rng = stream(2024, 0);
        let n = 10_000;
        for _ in 0..n {
            counts[tournament_select(&members, 2, &mut rng).unwrap()] += 1;
        }
        let expected = n as f64 / p as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square critical value, 7 degrees of freedom, alpha = 0.01
        assert!(chi2 < 18.475, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn crossover_definition() {
        let (c1, c2) = crossover_at(&chrom("1111"), &chrom("0000"), 2).unwrap();
        assert_eq!(
            (c1.to_string(), c2.to_string()),
            ("1100".into(), "0011".into())
        );
        assert!(crossover_at(&chrom("1111"), &chrom("000"), 2).is_err());
        assert!(crossover_at(&chrom("1"), &chrom("0"), 1).is_err());
        assert!(crossover_at(&chrom("1111"), &chrom("0000"), 4).is_err());
    }

    #[test]
    fn crossover_two_genes_always_swaps_one() {
        let mut rng = stream(3, 0);
        for _ in 0..50 {
            let (c1, c2, cut) =
                single_point_crossover_traced(&chrom("10"), &chrom("01"), &mut rng).unwrap();
            assert_eq!(cut, 1);
            assert_eq!((c1.to_string(), c2.to_string()), ("11".into(), "00".into()));
        }
    }

    #[test]
    fn mutation_extremes() {
        let mut rng = stream(4, 0);
        let c = chrom("1011001");
        assert_eq!(mutate(&c, 0.0, &mut rng), c);
        assert_eq!(mutate(&c, 1.0, &mut rng).to_string(), "0100110");
    }

    #[test]
    fn mutation_mean_flip_count() {
        let mut rng = stream(5, 0);
        let trials = 10_000;
        let len = 100;
        let mut total = 0usize;
        for _ in 0..trials {
            let mut c = Chromosome::zeros(len);
            total += mutate_in_place(&mut c, 0.01, &mut rng);
        }
        let mean = total as f64 / trials as f64;
        assert!((0.9..=1.1).contains(&mean), "mean flips {mean}");
        // Binomial(N*L, p_m): within 3 standard errors of N*L*p_m.
        let n = (trials * len) as f64;
        let sd = (n * 0.01 * 0.99).sqrt();
        assert!((total as f64 - n * 0.01).abs() < 3.0 * sd);
    }

    proptest! {
        #[test]
        fn crossover_conserves_genes(
            pair in (2usize..64).prop_flat_map(|l| (
                proptest::collection::vec(any::<bool>(), l),
                proptest::collection::vec(any::<bool>(), l),
                1..l,
            ))
        ) {
            let (a, b, cut) = pair;
            let (p1, p2) = (Chromosome::new(a), Chromosome::new(b));
            let (c1, c2) = crossover_at(&p1, &p2, cut).unwrap();
            prop_assert_eq!(c1.len(), p1.len());
            for i in 0..p1.len() {
                let mut kids = [c1.get(i), c2.get(i)];
                let mut parents = [p1.get(i), p2.get(i)];
                kids.sort();
                parents.sort();
                prop_assert_eq!(kids, parents);
            }
        }

        #[test]
        fn identical_parents_give_identical_children(
            (bits, cut) in (2usize..64).prop_flat_map(|l| (proptest::collection::vec(any::<bool>(), l), 1..l))
        ) {
            let p = Chromosome::new(bits);
            let (c1, c2) = crossover_at(&p, &p, cut).unwrap();
            prop_assert_eq!(&c1, &p);
            prop_assert_eq!(&c2, &p);
        }
    }
}
