//! TOML experiment configs: an `[experiment]` section for the learner and
//! cost model, a `[grid]` section whose `n`/`m`/`d` entries are scalars or
//! equal-length arrays (zipped into grid points).

use serde::Deserialize;

use orq::cgt::CostKind;
use orq::harness::{Algorithm, Family, GridSpec};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    experiment: ExperimentSection,
    grid: GridSection,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSection {
    algorithm: String,
    #[serde(default = "default_cost_model")]
    cost_model: String,
    #[serde(default = "one")]
    cost_scale: f64,
    #[serde(default = "one")]
    const_scale: f64,
    #[serde(default = "default_trials")]
    trials_per_point: u32,
    #[serde(default)]
    base_seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    family: String,
    n: OneOrMany<u32>,
    m: OneOrMany<u64>,
    #[serde(default = "default_d")]
    d: OneOrMany<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

fn one() -> f64 {
    1.0
}

fn default_trials() -> u32 {
    100
}

fn default_cost_model() -> String {
    "belovs".into()
}

fn default_d() -> OneOrMany<u32> {
    OneOrMany::One(1)
}

pub fn parse_experiment(text: &str) -> anyhow::Result<GridSpec> {
    let file: ExperimentFile = toml::from_str(text)?;
    let algorithm: Algorithm = file
        .experiment
        .algorithm
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let cost_model: CostKind = file
        .experiment
        .cost_model
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let family: Family = file
        .grid
        .family
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    Ok(GridSpec {
        family,
        algorithm,
        cost_model,
        cost_scale: file.experiment.cost_scale,
        const_scale: file.experiment.const_scale,
        base_seed: file.experiment.base_seed,
        trials_per_point: file.experiment.trials_per_point,
        n: file.grid.n.into_vec(),
        m: file.grid.m.into_vec(),
        d: file.grid.d.into_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let spec = parse_experiment(
            r#"
            [experiment]
            algorithm = "learn_matching"
            cost_model = "montanaro_shao"
            cost_scale = 0.5
            const_scale = 2.0
            trials_per_point = 25
            base_seed = 7

            [grid]
            family = "matching"
            n = [256, 512]
            m = [64, 128]
            d = 1
            "#,
        )
        .unwrap();
        assert_eq!(spec.family, Family::Matching);
        assert_eq!(spec.algorithm, Algorithm::LearnMatching);
        assert_eq!(spec.cost_model, CostKind::MontanaroShao);
        assert_eq!(spec.trials_per_point, 25);
        assert_eq!(spec.base_seed, 7);
        assert_eq!(spec.n, vec![256, 512]);
        assert_eq!(spec.m, vec![64, 128]);
        assert_eq!(spec.d, vec![1]);
    }

    #[test]
    fn defaults_fill_in() {
        let spec = parse_experiment(
            r#"
            [experiment]
            algorithm = "find_edges"

            [grid]
            family = "bounded_degree"
            n = 2000
            m = 1000
            d = [2, 4, 8]
            "#,
        )
        .unwrap();
        assert_eq!(spec.cost_model, CostKind::Belovs);
        assert_eq!(spec.trials_per_point, 100);
        assert_eq!(spec.cost_scale, 1.0);
        assert_eq!(spec.n, vec![2000]);
        assert_eq!(spec.d, vec![2, 4, 8]);
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(parse_experiment(
            r#"
                [experiment]
                algorithm = "gradient_descent"
                [grid]
                family = "matching"
                n = 10
                m = 2
                "#,
        )
        .is_err());
        assert!(parse_experiment(
            r#"
                [experiment]
                algorithm = "find_edges"
                typo_field = 3
                [grid]
                family = "matching"
                n = 10
                m = 2
                "#,
        )
        .is_err());
    }
}
