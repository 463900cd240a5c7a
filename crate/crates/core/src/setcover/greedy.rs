use super::{CoverSolution, SetCoverInstance};
use crate::error::Result;

/// Repeatedly takes the set with the smallest cost per newly covered
/// element, breaking ties by lowest set index.
pub fn greedy(inst: &SetCoverInstance) -> Result<CoverSolution> {
    let scaled = inst.scaled()?;
    let mut uncovered = vec![true; inst.len()];
    let mut left = inst.len();
    let mut chosen = Vec::new();
    while left > 0 {
        let mut best: Option<(usize, u128, u128)> = None;
        for (i, s) in inst.sets.iter().enumerate() {
            let k = s.members.iter().filter(|&&e| uncovered[e]).count() as u128;
            if k == 0 {
                continue;
            }
            let c = u128::from(scaled.costs[i]);
            if best.is_none_or(|(_, bc, bk)| c * bk < bc * k) {
                best = Some((i, c, k));
            }
        }
        let (i, _, _) = best.expect("instance union covers the universe");
        for &e in &inst.sets[i].members {
            if std::mem::replace(&mut uncovered[e], false) {
                left -= 1;
            }
        }
        chosen.push(i);
    }
    Ok(CoverSolution::new(inst, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{harmonic, int, ratio};
    use crate::setcover::tests::{brute_opt, pair};
    use crate::setcover::{biclique_instance, eta_star};

    #[test]
    fn examples() {
        let sol = greedy(&pair()).unwrap();
        assert_eq!(sol.chosen, [2]);
        assert_eq!(sol.total_cost, ratio(3, 2));
        let single = SetCoverInstance::numbered(1, vec![(vec![0], int(5))]).unwrap();
        assert_eq!(greedy(&single).unwrap().total_cost, int(5));
    }

    #[test]
    fn lowest_index_wins_ties() {
        let inst = SetCoverInstance::numbered(2, vec![(vec![0], int(1)), (vec![0], int(1)), (vec![1], int(2))]).unwrap();
        assert_eq!(greedy(&inst).unwrap().chosen, [0, 2]);
    }

    #[test]
    fn sample_graph_within_harmonic_bound() {
        let bi = biclique_instance(&crate::samples::graph()).unwrap();
        let sol = greedy(&bi.instance).unwrap();
        assert!(bi.instance.is_cover(&sol.chosen));
        assert!(sol.total_cost <= harmonic(15) * int(13));
        assert!(sol.total_cost <= harmonic(15) * eta_star(&bi.instance).unwrap());
    }

    #[test]
    fn greedy_can_be_suboptimal() {
        // Greedy opens with the 4-element set at ratio 3/2 and still needs a
        // second set for element 5.
        let inst = SetCoverInstance::numbered(
            5,
            vec![(vec![0, 1, 2, 3], int(6)), (vec![0, 1, 4], int(5)), (vec![2, 3, 4], int(5))],
        )
        .unwrap();
        let sol = greedy(&inst).unwrap();
        assert_eq!(sol.total_cost, int(11));
        assert_eq!(brute_opt(&inst), int(10));
    }
}
