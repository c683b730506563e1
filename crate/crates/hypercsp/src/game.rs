//! The robber-and-army pursuit game and its width.
//!
//! A position is a pair (weighting, robber vertex); two weightings with the
//! same blocked set are interchangeable, and a move that blocks a superset
//! of another's blocked set dominates it. Quotienting by blocked sets and
//! keeping only inclusion-maximal blockable sets therefore turns the game
//! into a finite attractor computation, at the price of an exponential
//! (desk-scale) position space.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::bitset::VertexSet;
use crate::error::{invalid, resource_limit, Result};
use crate::hypergraph::Hypergraph;
use crate::weights::{fractional_edge_cover, Rational};

/// Default cap on the vertex count for game computations.
pub const DEFAULT_GAME_CAP: usize = 10;

fn cover_value_table(h: &Hypergraph) -> Vec<Rational> {
    let n = h.vertex_count();
    let mut table = vec![Rational::zero(); 1 << n];
    for mask in 1u64..(1 << n) {
        let target = VertexSet::from_mask(mask);
        let (value, _) = fractional_edge_cover(h, &target)
            .expect("nonempty subsets of the vertex set are coverable");
        table[mask as usize] = value;
    }
    table
}

fn maximal_blockable(h: &Hypergraph, table: &[Rational], r: &Rational) -> Vec<VertexSet> {
    let n = h.vertex_count();
    let full: u64 = (1 << n) - 1;
    let qualifies = |mask: u64| mask == 0 || &table[mask as usize] <= r;
    let mut out = Vec::new();
    for mask in 1u64..=full {
        if qualifies(mask) && (0..n).all(|v| mask & (1 << v) != 0 || !qualifies(mask | (1 << v))) {
            out.push(VertexSet::from_mask(mask));
        }
    }
    if out.is_empty() {
        out.push(VertexSet::new());
    }
    out
}

/// All inclusion-maximal vertex sets `S` with `fractional_edge_cover(h, S)`
/// at most `r`. Larger blocked sets only help the blocking player, so the
/// maximal sets suffice to determine the winner. When no nonempty set
/// qualifies the family is `{∅}`.
pub fn blockable_family(h: &Hypergraph, r: &Rational) -> Result<Vec<VertexSet>> {
    blockable_family_with_cap(h, r, DEFAULT_GAME_CAP)
}

pub fn blockable_family_with_cap(
    h: &Hypergraph,
    r: &Rational,
    cap: usize,
) -> Result<Vec<VertexSet>> {
    check_cap(h, cap)?;
    if r < &Rational::zero() {
        return invalid("the budget must be nonnegative");
    }
    Ok(maximal_blockable(h, &cover_value_table(h), r))
}

fn check_cap(h: &Hypergraph, cap: usize) -> Result<()> {
    let n = h.vertex_count();
    if n > cap.min(63) {
        return resource_limit(format!(
            "game analysis on {n} vertices exceeds the cap of {}",
            cap.min(63)
        ));
    }
    Ok(())
}

/// The quotient arena of the game on `h` with budget `r`, solved on
/// construction.
#[derive(Clone, Debug)]
pub struct GameArena {
    budget: Rational,
    blockable: Vec<VertexSet>,
    /// win[s][v]: the blocking player wins from (blockable[s], v)
    win: Vec<Vec<bool>>,
    general_wins: bool,
}

impl GameArena {
    pub fn new(h: &Hypergraph, r: &Rational) -> Result<GameArena> {
        Self::new_with_cap(h, r, DEFAULT_GAME_CAP)
    }

    pub fn new_with_cap(h: &Hypergraph, r: &Rational, cap: usize) -> Result<GameArena> {
        check_cap(h, cap)?;
        if r < &Rational::zero() {
            return invalid("the budget must be nonnegative");
        }
        let table = cover_value_table(h);
        let blockable = maximal_blockable(h, &table, r);
        Ok(Self::solve(h, r.clone(), blockable))
    }

    fn solve(h: &Hypergraph, budget: Rational, blockable: Vec<VertexSet>) -> GameArena {
        let n = h.vertex_count();
        let k = blockable.len();
        // reachability grouped by the blocked intersection actually played
        let mut reach_cache: HashMap<VertexSet, Vec<VertexSet>> = HashMap::new();
        let mut reach = |blocked: &VertexSet, v: usize| -> VertexSet {
            let per_vertex = reach_cache.entry(blocked.clone()).or_insert_with(|| {
                (0..n)
                    .map(|u| {
                        h.reachable(blocked, u)
                            .expect("vertex indices are in range")
                    })
                    .collect()
            });
            per_vertex[v].clone()
        };

        let mut win = vec![vec![false; n]; k];
        loop {
            let mut changed = false;
            for s in 0..k {
                for v in 0..n {
                    if win[s][v] || blockable[s].contains(v) {
                        continue;
                    }
                    let winning = (0..k).any(|t| {
                        let crossing = blockable[s].intersection(&blockable[t]);
                        reach(&crossing, v)
                            .iter()
                            .all(|u| blockable[t].contains(u) || win[t][u])
                    });
                    if winning {
                        win[s][v] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // from the start the previous blocked set is empty, and the robber
        // picks the starting vertex: the general must win from every one
        let general_wins = (0..n).all(|v0| {
            (0..k).any(|t| {
                reach(&VertexSet::new(), v0)
                    .iter()
                    .all(|u| blockable[t].contains(u) || win[t][u])
            })
        });
        GameArena {
            budget,
            blockable,
            win,
            general_wins,
        }
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn blockable(&self) -> &[VertexSet] {
        &self.blockable
    }

    pub fn general_wins(&self) -> bool {
        self.general_wins
    }

    /// A winning move for the blocking player from the position where
    /// `blocked` is in force and the robber stands on `robber`; `None` if the
    /// position is not winning. From the initial position pass an empty
    /// `blocked` set.
    pub fn winning_move(
        &self,
        h: &Hypergraph,
        blocked: &VertexSet,
        robber: usize,
    ) -> Result<Option<&VertexSet>> {
        if robber >= h.vertex_count() {
            return crate::error::unknown_vertex(format!("vertex index {robber} out of range"));
        }
        for (t, target) in self.blockable.iter().enumerate() {
            let crossing = blocked.intersection(target);
            let escape = h.reachable(&crossing, robber)?;
            if escape.iter().all(|u| target.contains(u) || self.win[t][u]) {
                return Ok(Some(target));
            }
        }
        Ok(None)
    }
}

/// Does the blocking player win the game on `h` with budget `r`?
pub fn general_wins(h: &Hypergraph, r: &Rational) -> Result<bool> {
    Ok(GameArena::new(h, r)?.general_wins())
}

pub fn general_wins_with_cap(h: &Hypergraph, r: &Rational, cap: usize) -> Result<bool> {
    Ok(GameArena::new_with_cap(h, r, cap)?.general_wins())
}

/// The least budget with which the blocking player wins. The winner can only
/// change where the blockable family changes, so it suffices to test the
/// distinct cover values of vertex subsets in increasing order.
pub fn army_width(h: &Hypergraph) -> Result<Rational> {
    army_width_with_cap(h, DEFAULT_GAME_CAP)
}

pub fn army_width_with_cap(h: &Hypergraph, cap: usize) -> Result<Rational> {
    check_cap(h, cap)?;
    let table = cover_value_table(h);
    let mut candidates: BTreeSet<Rational> = table.iter().cloned().collect();
    candidates.insert(Rational::zero());
    for r in candidates {
        let blockable = maximal_blockable(h, &table, &r);
        let arena = GameArena::solve(h, r.clone(), blockable);
        if arena.general_wins() {
            return Ok(r);
        }
    }
    unreachable!("the full-cover budget always wins");
}
