//! Instance builders: the Condorcet examples, the hardness constructions and
//! seeded random instances.

mod roommates;
mod x3c;

pub use roommates::{gen_pop_from_roommates, house_to_roommates, roommates_to_house, Roommates};
pub use x3c::{
    gen_perpo_x3c, gen_pop_x3c, gen_popv_x3c, normalize_x3c, pad_odd, solve_x3c, X3c, X3C_SET_GUARD,
};

use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Project};
use crate::weighted::WeightedInstance;

/// The two three-applicant instances without a popular matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CondorcetVariant {
    /// Unit quotas, identical lists `p1 > p2 > p3`.
    Unit,
    /// Quotas 3/3, lists shifted cyclically.
    Lq3,
}

pub fn gen_condorcet(variant: CondorcetVariant) -> Instance {
    let (q, lists): (u32, [[usize; 3]; 3]) = match variant {
        CondorcetVariant::Unit => (1, [[0, 1, 2], [0, 1, 2], [0, 1, 2]]),
        CondorcetVariant::Lq3 => (3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]]),
    };
    Instance::new(
        (1..=3).map(|i| format!("a{i}")).collect(),
        (1..=3)
            .map(|i| Project::new(format!("p{i}"), q, q))
            .collect(),
        lists.iter().map(|l| l.to_vec()).collect(),
    )
    .expect("fixed instance is valid")
}

/// Shape of a random instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    /// Lower quotas are drawn from `1..=lower_max.min(upper_max)`.
    pub lower_max: u32,
    pub upper_max: u32,
    pub list_len: RangeInclusive<usize>,
}

/// Seeded random instance with quotas `1 <= l <= u <= quota_max`.
pub fn gen_random(
    seed: u64,
    n: usize,
    m: usize,
    quota_max: u32,
    list_len_range: RangeInclusive<usize>,
) -> Result<Instance> {
    gen_random_with(
        seed,
        &RandomParams {
            n,
            m,
            lower_max: quota_max,
            upper_max: quota_max,
            list_len: list_len_range,
        },
    )
}

pub fn gen_random_with(seed: u64, params: &RandomParams) -> Result<Instance> {
    let RandomParams {
        n,
        m,
        lower_max,
        upper_max,
        ref list_len,
    } = *params;
    if upper_max == 0 || lower_max == 0 {
        return Err(Error::Parameters("quota bounds must be positive".into()));
    }
    if list_len.is_empty() || *list_len.end() > m {
        return Err(Error::Parameters(format!(
            "list lengths {}..={} impossible with {m} projects",
            list_len.start(),
            list_len.end()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let projects = (1..=m)
        .map(|j| {
            let lower = rng.gen_range(1..=lower_max.min(upper_max));
            let upper = rng.gen_range(lower..=upper_max);
            Project::new(format!("p{j}"), lower, upper)
        })
        .collect();
    let prefs = (0..n)
        .map(|_| {
            let k = rng.gen_range(list_len.clone());
            sample(&mut rng, m, k).into_vec()
        })
        .collect();
    Instance::new((1..=n).map(|i| format!("a{i}")).collect(), projects, prefs)
}

/// Seeded weights drawn uniformly from `0..=max_weight`.
pub fn random_weights(seed: u64, inst: &Instance, max_weight: i64) -> WeightedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    WeightedInstance::from_fn(inst.clone(), |_, _, _| rng.gen_range(0..=max_weight.max(0)))
        .expect("random weights are nonnegative")
}
