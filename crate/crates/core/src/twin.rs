//! Advanced twin operator and the adaptive twin probability controller.
//!
//! The designated mating pairs the rank-2 member with a uniformly drawn
//! member and crosses them once. With probability `p_twin` each crossover
//! child then receives a twin mate: a copy of the child with a fraction
//! `separability` of its unequal genes against each parent flipped.

use rand::seq::index;
use rand::Rng;

use crate::chromosome::{check_same_len, Chromosome};
use crate::error::{GaError, Result};
use crate::ga::config::GaConfig;
use crate::ga::individual::{Individual, Population};
use crate::ga::operators::single_point_crossover_traced;
use crate::scalar::Scalar;

/// Gap kept below `k3` when the fitness difference reaches the ceiling.
pub const P_TWIN_CEILING_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TwinParams<T> {
    /// Lower fitness gate, as a fraction of the optimum fitness.
    pub k1: T,
    /// Upper fitness gate.
    pub k1_prime: T,
    /// Smallest p_twin inside the gate.
    pub k2: T,
    /// Exclusive upper bound on p_twin.
    pub k3: T,
    /// Fraction of each unequal-gene set flipped to build a twin mate.
    pub separability: T,
    /// Replaces the adaptive rule with a constant probability when set.
    pub fixed_p_twin: Option<T>,
}

impl<T: Scalar> Default for TwinParams<T> {
    fn default() -> Self {
        Self {
            k1: T::lit(0.5),
            k1_prime: T::lit(0.95),
            k2: T::lit(0.05),
            k3: T::lit(0.4),
            separability: T::lit(0.5),
            fixed_p_twin: None,
        }
    }
}

impl<T: Scalar> TwinParams<T> {
    pub fn validate(&self) -> Result<()> {
        let (zero, one) = (T::zero(), T::one());
        if !(zero < self.k1 && self.k1 < self.k1_prime && self.k1_prime <= one) {
            return Err(GaError::Config(format!(
                "twin gates must satisfy 0 < k1 < k1_prime <= 1, got k1 = {}, k1_prime = {}",
                self.k1, self.k1_prime
            )));
        }
        if !(zero < self.k2 && self.k2 < self.k3 && self.k3 <= one) {
            return Err(GaError::Config(format!(
                "twin probability bounds must satisfy 0 < k2 < k3 <= 1, got k2 = {}, k3 = {}",
                self.k2, self.k3
            )));
        }
        if !(zero < self.separability && self.separability <= one) {
            return Err(GaError::Config(format!(
                "separability must lie in (0, 1], got {}",
                self.separability
            )));
        }
        if let Some(p) = self.fixed_p_twin {
            if !(zero <= p && p <= one) {
                return Err(GaError::Config(format!(
                    "p_twin must lie in [0, 1], got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Twin probability from the best and second-best fitness.
///
/// Returns 0 unless `k1 < f_max < k1_prime`. Inside the gate the fitness gap
/// `f_max - f_max_prime` is clamped into `[k2, k3)`.
pub fn adaptive_p_twin<T: Scalar>(f_max: T, f_max_prime: T, params: &TwinParams<T>) -> Result<T> {
    if f_max_prime > f_max {
        return Err(GaError::InvalidRanking {
            best: f_max.as_f64(),
            second: f_max_prime.as_f64(),
        });
    }
    if f_max <= params.k1 || f_max >= params.k1_prime {
        return Ok(T::zero());
    }
    let gap = f_max - f_max_prime;
    Ok(if gap < params.k2 {
        params.k2
    } else if gap >= params.k3 {
        params.k3 - T::lit(P_TWIN_CEILING_EPS)
    } else {
        gap
    })
}

/// Twin probability for the designated mating of `pop`.
pub fn effective_p_twin<T: Scalar>(pop: &Population<T>, params: &TwinParams<T>) -> Result<T> {
    if let Some(p) = params.fixed_p_twin {
        return Ok(p);
    }
    let (best, second) = pop.top_two()?;
    adaptive_p_twin(best.fitness, second.fitness, params)
}

/// Sorted positions where `a` and `b` differ.
pub fn unequal_positions(a: &Chromosome, b: &Chromosome) -> Result<Vec<usize>> {
    check_same_len(a, b)?;
    Ok(a.bits()
        .iter()
        .zip(b.bits())
        .enumerate()
        .filter_map(|(i, (x, y))| (x != y).then_some(i))
        .collect())
}

/// Unequal-gene sets of one child and the positions chosen from each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinMateTrace {
    /// Positions where the child differs from the rank-2 parent.
    pub h1: Vec<usize>,
    /// Positions where the child differs from the random parent.
    pub h2: Vec<usize>,
    pub flipped_from_h1: Vec<usize>,
    pub flipped_from_h2: Vec<usize>,
}

fn pick<R: Rng + ?Sized>(set: &[usize], separability: f64, rng: &mut R) -> Vec<usize> {
    let amount = (separability * set.len() as f64).floor() as usize;
    let mut chosen: Vec<usize> = index::sample(rng, set.len(), amount.min(set.len()))
        .into_iter()
        .map(|i| set[i])
        .collect();
    chosen.sort_unstable();
    chosen
}

/// Builds the twin mate of `child`.
///
/// Picks `floor(separability * |h|)` positions uniformly without replacement
/// from each of `h1` and `h2` and flips the child at those positions. A
/// position picked from both sets is flipped once.
pub fn make_twin_mate<T: Scalar, R: Rng + ?Sized>(
    child: &Chromosome,
    h1: &[usize],
    h2: &[usize],
    separability: T,
    rng: &mut R,
) -> Result<Chromosome> {
    make_twin_mate_traced(child, h1, h2, separability, rng).map(|(mate, _)| mate)
}

pub fn make_twin_mate_traced<T: Scalar, R: Rng + ?Sized>(
    child: &Chromosome,
    h1: &[usize],
    h2: &[usize],
    separability: T,
    rng: &mut R,
) -> Result<(Chromosome, TwinMateTrace)> {
    if let Some(&bad) = h1.iter().chain(h2).find(|&&i| i >= child.len()) {
        return Err(GaError::InvalidEncoding(format!(
            "position {bad} outside chromosome of length {}",
            child.len()
        )));
    }
    let s = separability.as_f64();
    if !(s > 0.0 && s <= 1.0) {
        return Err(GaError::InvalidInput(format!(
            "separability must lie in (0, 1], got {s}"
        )));
    }
    let from_h1 = pick(h1, s, rng);
    let from_h2 = pick(h2, s, rng);
    let mut flips: Vec<usize> = from_h1.iter().chain(&from_h2).copied().collect();
    flips.sort_unstable();
    flips.dedup();
    let mut mate = child.clone();
    for i in flips {
        mate.flip(i);
    }
    let trace = TwinMateTrace {
        h1: h1.to_vec(),
        h2: h2.to_vec(),
        flipped_from_h1: from_h1,
        flipped_from_h2: from_h2,
    };
    Ok((mate, trace))
}

/// Outcome of one designated twin-candidate mating.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinEvent<T> {
    /// Rank-2 member.
    pub parent1: Individual<T>,
    /// Uniformly drawn member.
    pub parent2: Individual<T>,
    pub parent2_index: usize,
    pub cut: usize,
    /// Pre-mutation offspring: `[child1, child2]`, or
    /// `[child1, child2, child3, child4]` when the operator fired.
    pub children: Vec<Chromosome>,
    pub applied: bool,
    pub p_twin_used: T,
    /// Traces for child3 (from child1) and child4 (from child2) when applied.
    pub traces: Vec<TwinMateTrace>,
}

impl<T> TwinEvent<T> {
    /// `(child1, child3)` and `(child2, child4)`, when the operator fired.
    pub fn twin_pairs(&self) -> Option<[(&Chromosome, &Chromosome); 2]> {
        self.applied.then(|| {
            [
                (&self.children[0], &self.children[2]),
                (&self.children[1], &self.children[3]),
            ]
        })
    }
}

/// Designated mating with the twin probability derived from `config`.
pub fn twin_reproduction<T: Scalar, R: Rng + ?Sized>(
    pop: &Population<T>,
    config: &GaConfig<T>,
    rng: &mut R,
) -> Result<TwinEvent<T>> {
    let p_twin = effective_p_twin(pop, &config.twin)?;
    twin_reproduction_with(pop, p_twin, config.twin.separability, rng)
}

/// Designated mating with an explicit twin probability.
///
/// Draw order on `rng`: random parent index, cut point, firing draw `u`, then
/// the twin-mate position picks. `u` is drawn even when `p_twin` is 0.
pub fn twin_reproduction_with<T: Scalar, R: Rng + ?Sized>(
    pop: &Population<T>,
    p_twin: T,
    separability: T,
    rng: &mut R,
) -> Result<TwinEvent<T>> {
    let (_, rank2) = pop.top_two()?;
    let parent1 = rank2.clone();
    let parent2_index = rng.random_range(0..pop.len());
    let parent2 = pop.members[parent2_index].clone();

    let (child1, child2, cut) =
        single_point_crossover_traced(&parent1.chromosome, &parent2.chromosome, rng)?;
    let u: f64 = rng.random();
    let applied = u < p_twin.as_f64();

    let mut children = vec![child1, child2];
    let mut traces = Vec::new();
    if applied {
        for k in 0..2 {
            let child = &children[k];
            let h1 = unequal_positions(child, &parent1.chromosome)?;
            let h2 = unequal_positions(child, &parent2.chromosome)?;
            let (mate, trace) = make_twin_mate_traced(child, &h1, &h2, separability, rng)?;
            children.push(mate);
            traces.push(trace);
        }
    }
    Ok(TwinEvent {
        parent1,
        parent2,
        parent2_index,
        cut,
        children,
        applied,
        p_twin_used: p_twin,
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{BenchmarkKind, BenchmarkSpec};
    use crate::ga::operators::crossover_at;
    use crate::rng::stream;
    use proptest::prelude::*;

    fn chrom(s: &str) -> Chromosome {
        s.parse().unwrap()
    }

    #[test]
    fn unequal_positions_examples() {
        assert_eq!(
            unequal_positions(&chrom("1100"), &chrom("1111")).unwrap(),
            vec![2, 3]
        );
        assert!(unequal_positions(&chrom("1010"), &chrom("1010"))
            .unwrap()
            .is_empty());
        assert!(unequal_positions(&chrom("10"), &chrom("101")).is_err());
    }

    #[test]
    fn unequal_sets_partition_parent_difference_exhaustive() {
        for a in 0u8..16 {
            for b in 0u8..16 {
                let p1 = Chromosome::new((0..4).map(|i| a >> (3 - i) & 1 == 1).collect());
                let p2 = Chromosome::new((0..4).map(|i| b >> (3 - i) & 1 == 1).collect());
                let diff = unequal_positions(&p1, &p2).unwrap();
                for cut in 1..4 {
                    let (c1, c2) = crossover_at(&p1, &p2, cut).unwrap();
                    for child in [&c1, &c2] {
                        let h1 = unequal_positions(child, &p1).unwrap();
                        let h2 = unequal_positions(child, &p2).unwrap();
                        assert!(h1.iter().all(|i| !h2.contains(i)));
                        let mut union: Vec<usize> = h1.iter().chain(&h2).copied().collect();
                        union.sort_unstable();
                        assert_eq!(union, diff);
                    }
                }
            }
        }
    }

    #[test]
    fn twin_mate_half_selection_enumerated() {
        // Every one of the four {2|3} x {0|1} picks flips exactly one gene from each set.
        let child = chrom("1100");
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let mut rng = stream(seed, 0);
            let (mate, trace) =
                make_twin_mate_traced(&child, &[2, 3], &[0, 1], 0.5, &mut rng).unwrap();
            assert_eq!(trace.flipped_from_h1.len(), 1);
            assert_eq!(trace.flipped_from_h2.len(), 1);
            let d = unequal_positions(&child, &mate).unwrap();
            assert_eq!(d.len(), 2);
            assert!(d.iter().filter(|i| [2, 3].contains(*i)).count() == 1);
            assert!(d.iter().filter(|i| [0, 1].contains(*i)).count() == 1);
            seen.insert(mate.to_string());
        }
        let expected: std::collections::BTreeSet<String> = ["0110", "0101", "1010", "1001"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn twin_mate_edge_cases() {
        let child = chrom("1100");
        let mut rng = stream(0, 0);
        assert_eq!(
            make_twin_mate(&child, &[], &[], 0.5, &mut rng).unwrap(),
            child
        );
        // Full separability over disjoint, covering sets gives the other crossover child.
        let (c1, c2) = crossover_at(&chrom("1111"), &chrom("0000"), 2).unwrap();
        assert_eq!(c1, child);
        let mate = make_twin_mate(&child, &[2, 3], &[0, 1], 1.0, &mut rng).unwrap();
        assert_eq!(mate.to_string(), "0011");
        assert_eq!(mate, c2);
        assert!(make_twin_mate(&child, &[4], &[], 0.5, &mut rng).is_err());
        // Singleton sets flip nothing at separability 0.5.
        assert_eq!(
            make_twin_mate(&child, &[1], &[3], 0.5, &mut rng).unwrap(),
            child
        );
    }

    #[test]
    fn adaptive_examples() {
        let p = TwinParams::<f64>::default();
        assert!((adaptive_p_twin(0.80, 0.72, &p).unwrap() - 0.08).abs() < 1e-12);
        assert_eq!(adaptive_p_twin(0.96, 0.5, &p).unwrap(), 0.0);
        assert_eq!(adaptive_p_twin(0.70, 0.69, &p).unwrap(), 0.05);
        assert_eq!(adaptive_p_twin(0.70, 0.70, &p).unwrap(), 0.05);
        assert_eq!(adaptive_p_twin(0.50, 0.10, &p).unwrap(), 0.0);
        assert_eq!(adaptive_p_twin(0.95, 0.10, &p).unwrap(), 0.0);
        let top = adaptive_p_twin(0.90, 0.10, &p).unwrap();
        assert!(top < 0.4 && top > 0.4 - 1e-8);
        assert!(matches!(
            adaptive_p_twin(0.6, 0.7, &p),
            Err(GaError::InvalidRanking { .. })
        ));
    }

    #[test]
    fn params_validation() {
        TwinParams::<f64>::default().validate().unwrap();
        let bad = [
            TwinParams {
                k1: 0.95,
                ..TwinParams::default()
            },
            TwinParams {
                k2: 0.5,
                ..TwinParams::default()
            },
            TwinParams {
                separability: 0.0,
                ..TwinParams::default()
            },
            TwinParams {
                fixed_p_twin: Some(1.2),
                ..TwinParams::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    fn population(spec: &BenchmarkSpec<f64>, chromosomes: &[&str]) -> Population<f64> {
        Population::new(
            chromosomes
                .iter()
                .map(|s| Individual::evaluate(chrom(s), spec).unwrap())
                .collect(),
            0,
        )
    }

    #[test]
    fn zero_probability_never_fires() {
        let spec = BenchmarkSpec::<f64>::preset(BenchmarkKind::Sphere).with_bits_per_variable(2);
        let pop = population(&spec, &["111111", "000000", "101010", "010101"]);
        let mut rng = stream(9, 1);
        for _ in 0..100 {
            let ev = twin_reproduction_with(&pop, 0.0, 0.5, &mut rng).unwrap();
            assert!(!ev.applied);
            assert_eq!(ev.children.len(), 2);
            assert!(ev.twin_pairs().is_none());
        }
    }

    #[test]
    fn forced_firing_builds_two_twin_pairs() {
        // Two members, so both parents come from {1111, 0000}.
        let spec =
            BenchmarkSpec::<f64>::preset(BenchmarkKind::Rosenbrock).with_bits_per_variable(2);
        let pop = population(&spec, &["1111", "0000"]);
        let mut rng = stream(11, 1);
        for _ in 0..50 {
            let ev = twin_reproduction_with(&pop, 1.0, 0.5, &mut rng).unwrap();
            assert!(ev.applied);
            assert_eq!(ev.children.len(), 4);
            assert_eq!(ev.traces.len(), 2);
            for ((child, mate), trace) in ev.twin_pairs().unwrap().iter().zip(&ev.traces) {
                let expected = trace.h1.len() / 2 + trace.h2.len() / 2;
                assert_eq!(child.hamming(mate).unwrap(), expected);
            }
        }
    }

    #[test]
    fn rank_two_is_first_parent() {
        let spec = BenchmarkSpec::<f64>::preset(BenchmarkKind::Sphere).with_bits_per_variable(2);
        let pop = population(&spec, &["000000", "011001", "101010", "111111"]);
        let ranked = pop.ranked_indices();
        let mut rng = stream(3, 1);
        let ev = twin_reproduction_with(&pop, 0.0, 0.5, &mut rng).unwrap();
        assert_eq!(ev.parent1, pop.members[ranked[1]]);
        assert_eq!(ev.parent2, pop.members[ev.parent2_index]);
    }

    proptest! {
        #[test]
        fn adaptive_output_range(f in 0.0f64..=1.0, g in 0.0f64..=1.0) {
            let (hi, lo) = if f >= g { (f, g) } else { (g, f) };
            let p = adaptive_p_twin(hi, lo, &TwinParams::default()).unwrap();
            prop_assert!(p == 0.0 || (0.05..0.4).contains(&p));
        }

        #[test]
        fn twin_mate_preserves_unselected_genes(
            bits in proptest::collection::vec(any::<bool>(), 2..48),
            other in proptest::collection::vec(any::<bool>(), 48),
            seed in any::<u64>(),
            s in prop_oneof![Just(0.25f64), Just(0.5), Just(1.0)],
        ) {
            let child = Chromosome::new(bits.clone());
            let parent = Chromosome::new(other[..bits.len()].to_vec());
            let h = unequal_positions(&child, &parent).unwrap();
            let (h1, h2): (Vec<usize>, Vec<usize>) = h.iter().partition(|&&i| i % 2 == 0);
            let mut rng = stream(seed, 1);
            let (mate, trace) = make_twin_mate_traced(&child, &h1, &h2, s, &mut rng).unwrap();
            prop_assert_eq!(mate.len(), child.len());
            let expected = (s * h1.len() as f64).floor() as usize + (s * h2.len() as f64).floor() as usize;
            prop_assert_eq!(child.hamming(&mate).unwrap(), expected);
            for i in 0..child.len() {
                let picked = trace.flipped_from_h1.contains(&i) || trace.flipped_from_h2.contains(&i);
                prop_assert_eq!(mate.get(i) != child.get(i), picked);
            }
        }
    }
}
