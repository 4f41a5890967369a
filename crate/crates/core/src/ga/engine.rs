use rand::Rng;

use crate::chromosome::Chromosome;
use crate::error::Result;
use crate::experiment::record::{GenerationEntry, TrialRecord};
use crate::ga::config::{GaConfig, Mode};
use crate::ga::individual::{Individual, Population};
use crate::ga::operators::{crossover_at, mutate_in_place, tournament_select};
use crate::rng::TrialStreams;
use crate::scalar::Scalar;
use crate::twin::{twin_reproduction, TwinEvent};

/// Result of advancing one generation.
#[derive(Debug, Clone)]
pub struct StepOutcome<T> {
    pub population: Population<T>,
    /// The designated mating, in ATGA mode.
    pub twin_event: Option<TwinEvent<T>>,
}

impl<T: Scalar> StepOutcome<T> {
    pub fn p_twin(&self) -> T {
        self.twin_event
            .as_ref()
            .map_or(T::zero(), |e| e.p_twin_used)
    }
}

pub fn initial_population<T: Scalar, R: Rng + ?Sized>(
    config: &GaConfig<T>,
    rng: &mut R,
) -> Result<Population<T>> {
    let len = config.chromosome_len();
    let members = (0..config.pop_size)
        .map(|_| Individual::evaluate(Chromosome::random(len, rng), &config.benchmark))
        .collect::<Result<Vec<_>>>()?;
    Ok(Population::new(members, 0))
}

/// Produces the next generation.
///
/// Slot 0 holds an unmutated copy of the rank-1 member. In ATGA mode the
/// designated mating's mutated children follow (drawn from `streams.twin`).
/// Standard matings on `streams.main` fill the rest: two tournament winners,
/// crossover with probability `p_c`, mutation of both children. Children
/// beyond `pop_size` are dropped.
pub fn step_generation<T: Scalar>(
    pop: &Population<T>,
    config: &GaConfig<T>,
    streams: &mut TrialStreams,
) -> Result<StepOutcome<T>> {
    let size = config.pop_size;
    let ranked = pop.ranked_indices();
    let mut next = Vec::with_capacity(size + 4);
    next.push(pop.members[ranked[0]].clone());

    let mut twin_event = None;
    if config.mode == Mode::Atga {
        let event = twin_reproduction(pop, config, &mut streams.twin)?;
        for child in &event.children {
            let mut c = child.clone();
            mutate_in_place(&mut c, config.p_m, &mut streams.twin);
            next.push(Individual::evaluate(c, &config.benchmark)?);
        }
        twin_event = Some(event);
    }

    let rng = &mut streams.main;
    let len = config.chromosome_len();
    while next.len() < size {
        let a = tournament_select(&pop.members, config.tournament_size, rng)?;
        let b = tournament_select(&pop.members, config.tournament_size, rng)?;
        let (pa, pb) = (&pop.members[a].chromosome, &pop.members[b].chromosome);
        let cross: f64 = rng.random();
        let (mut c1, mut c2) = if cross < config.p_c.as_f64() {
            let cut = rng.random_range(1..len);
            crossover_at(pa, pb, cut)?
        } else {
            (pa.clone(), pb.clone())
        };
        mutate_in_place(&mut c1, config.p_m, rng);
        mutate_in_place(&mut c2, config.p_m, rng);
        next.push(Individual::evaluate(c1, &config.benchmark)?);
        if next.len() < size {
            next.push(Individual::evaluate(c2, &config.benchmark)?);
        }
    }
    next.truncate(size);

    Ok(StepOutcome {
        population: Population::new(next, pop.generation + 1),
        twin_event,
    })
}

/// Runs trial 0 of `config`.
pub fn run<T: Scalar>(config: &GaConfig<T>) -> Result<TrialRecord<T>> {
    run_trial(config, 0)
}

/// Runs one trial for exactly `max_generations` steps after the initial population.
pub fn run_trial<T: Scalar>(config: &GaConfig<T>, trial_index: usize) -> Result<TrialRecord<T>> {
    config.validate()?;
    let mut streams = TrialStreams::new(config.master_seed, trial_index as u64);
    let mut pop = initial_population(config, &mut streams.main)?;

    let mut best_so_far = pop.best().expect("population is non-empty").clone();
    let mut entries = Vec::with_capacity(config.max_generations + 1);
    entries.push(GenerationEntry::observe(
        &pop,
        T::zero(),
        false,
        &best_so_far,
    )?);
    for _ in 0..config.max_generations {
        let outcome = step_generation(&pop, config, &mut streams)?;
        let fired = outcome.twin_event.as_ref().is_some_and(|e| e.applied);
        let p_twin = outcome.p_twin();
        pop = outcome.population;
        let best = pop.best().expect("population is non-empty");
        if best.fitness > best_so_far.fitness {
            best_so_far = best.clone();
        }
        entries.push(GenerationEntry::observe(&pop, p_twin, fired, &best_so_far)?);
    }
    Ok(TrialRecord::from_entries(
        trial_index,
        config.benchmark.fitness_kind,
        entries,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::BenchmarkKind;

    fn config(kind: BenchmarkKind, mode: Mode, seed: u64) -> GaConfig<f64> {
        GaConfig::preset(kind, mode).with_seed(seed)
    }

    #[test]
    fn step_preserves_size_and_keeps_elite() {
        for mode in [Mode::Sga, Mode::Atga] {
            let cfg = config(BenchmarkKind::Sphere, mode, 5);
            let mut streams = TrialStreams::new(5, 0);
            let mut pop = initial_population(&cfg, &mut streams.main).unwrap();
            for g in 1..=30 {
                let best = pop.best().unwrap().clone();
                let out = step_generation(&pop, &cfg, &mut streams).unwrap();
                assert_eq!(out.population.len(), cfg.pop_size);
                assert_eq!(out.population.generation, g);
                assert_eq!(out.population.members[0], best);
                assert!(out.population.best().unwrap().fitness >= best.fitness);
                assert_eq!(out.twin_event.is_some(), mode == Mode::Atga);
                pop = out.population;
            }
        }
    }

    #[test]
    fn step_is_deterministic() {
        let cfg = config(BenchmarkKind::Rastrigin, Mode::Atga, 77);
        let mut s = TrialStreams::new(77, 2);
        let pop = initial_population(&cfg, &mut s.main).unwrap();
        let a = step_generation(&pop, &cfg, &mut s.clone()).unwrap();
        let b = step_generation(&pop, &cfg, &mut s.clone()).unwrap();
        assert_eq!(a.population, b.population);
    }

    #[test]
    fn small_population_with_four_twin_children() {
        let mut cfg = config(BenchmarkKind::Rastrigin, Mode::Atga, 1);
        cfg.pop_size = 4;
        cfg.twin.fixed_p_twin = Some(1.0);
        let rec = run(&cfg).unwrap();
        assert_eq!(rec.entries.len(), 16);
        assert!(rec.entries[1..].iter().all(|e| e.twin_applied));
    }

    #[test]
    fn run_records_every_generation() {
        let cfg = config(BenchmarkKind::Himmelblau, Mode::Atga, 3);
        let rec = run(&cfg).unwrap();
        assert_eq!(rec.entries.len(), 16);
        assert_eq!(rec.entries[0].p_twin, 0.0);
        for (g, e) in rec.entries.iter().enumerate() {
            assert_eq!(e.generation, g);
            assert!(e.second_best_fitness <= e.best_fitness);
            assert!(e.avg_fitness <= e.best_fitness);
        }
        assert!(rec.final_best.fitness >= rec.entries[0].best_fitness);
        assert_eq!(run(&cfg).unwrap(), rec);
    }

    #[test]
    fn f32_runs() {
        let cfg = GaConfig::<f32>::preset(BenchmarkKind::Sphere, Mode::Atga).with_seed(4);
        let rec = run(&cfg).unwrap();
        assert_eq!(rec.entries.len(), 16);
        assert!(rec.final_best.fitness > 0.0 && rec.final_best.fitness <= 1.0);
    }
}
