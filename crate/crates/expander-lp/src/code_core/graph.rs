//! Tanner graphs: construction, random generation, syndromes, and the
//! exhaustive small-instance oracles (minimum distance, codeword list).
//!
//! Variables and checks are indexed from 0 throughout the API; the
//! serialized formats (alist, JSON) are 1-indexed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::combi::for_each_combination;

use super::word::BitWord;

/// Bipartite parity-check graph. Both adjacency lists are sorted
/// ascending and describe the same edge set; every node on either side
/// has degree at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    var_checks: Vec<Vec<usize>>,
    check_vars: Vec<Vec<usize>>,
    uniform_left_degree: Option<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least one variable and one check")]
    Empty,
    #[error("variable index {index} out of range (n={n})")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("check index {index} out of range (m={m})")]
    CheckOutOfRange { index: usize, m: usize },
    #[error("duplicate edge ({variable}, {check})")]
    DuplicateEdge { variable: usize, check: usize },
    #[error("variable {variable} has degree {found}, expected uniform degree {expected}")]
    NonUniformLeftDegree {
        variable: usize,
        found: usize,
        expected: usize,
    },
    #[error("variable {variable} has no incident check")]
    ZeroDegreeVariable { variable: usize },
    #[error("check {check} has no incident variable")]
    ZeroDegreeCheck { check: usize },
    #[error("word length {found} does not match expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cannot give {n} variables degree {c} with {m} checks")]
    InfeasibleDegrees { n: usize, m: usize, c: usize },
    #[error("resampling budget exhausted while avoiding parallel edges")]
    ResampleBudgetExhausted,
    #[error("{0} only supports up to 64 variables")]
    WordSpaceTooLarge(&'static str),
    #[error("code dimension {dim} too large to enumerate")]
    KernelTooLarge { dim: usize },
}

/// Validated construction from an explicit edge list. Requires uniform
/// left degree; see [`build_graph_nonuniform`] for the relaxed variant.
pub fn build_graph(
    n: usize,
    m: usize,
    edges: &[(usize, usize)],
) -> Result<TannerGraph, GraphError> {
    build_graph_inner(n, m, edges, true)
}

/// Same validation except variables may have differing degrees.
pub fn build_graph_nonuniform(
    n: usize,
    m: usize,
    edges: &[(usize, usize)],
) -> Result<TannerGraph, GraphError> {
    build_graph_inner(n, m, edges, false)
}

fn build_graph_inner(
    n: usize,
    m: usize,
    edges: &[(usize, usize)],
    require_uniform: bool,
) -> Result<TannerGraph, GraphError> {
    if n == 0 || m == 0 {
        return Err(GraphError::Empty);
    }
    let mut var_checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut check_vars: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(variable, check) in edges {
        if variable >= n {
            return Err(GraphError::VariableOutOfRange { index: variable, n });
        }
        if check >= m {
            return Err(GraphError::CheckOutOfRange { index: check, m });
        }
        if var_checks[variable].contains(&check) {
            return Err(GraphError::DuplicateEdge { variable, check });
        }
        var_checks[variable].push(check);
        check_vars[check].push(variable);
    }
    for (variable, list) in var_checks.iter_mut().enumerate() {
        if list.is_empty() {
            return Err(GraphError::ZeroDegreeVariable { variable });
        }
        list.sort_unstable();
    }
    for (check, list) in check_vars.iter_mut().enumerate() {
        if list.is_empty() {
            return Err(GraphError::ZeroDegreeCheck { check });
        }
        list.sort_unstable();
    }
    let c0 = var_checks[0].len();
    let uniform = var_checks.iter().all(|l| l.len() == c0);
    if require_uniform && !uniform {
        let variable = var_checks.iter().position(|l| l.len() != c0).unwrap();
        return Err(GraphError::NonUniformLeftDegree {
            variable,
            found: var_checks[variable].len(),
            expected: c0,
        });
    }
    Ok(TannerGraph {
        n,
        m,
        var_checks,
        check_vars,
        uniform_left_degree: uniform.then_some(c0),
    })
}

/// Configuration-model sample of a c-left-regular graph: every variable
/// draws c distinct checks uniformly; a draw colliding with one of the
/// variable's earlier picks is redrawn. Checks that end up with no
/// neighbor are pruned, so the returned m is the effective check count.
pub fn generate_regular(
    n: usize,
    m: usize,
    c: usize,
    seed: u64,
) -> Result<TannerGraph, GraphError> {
    if n == 0 || m == 0 || c == 0 || c > m {
        return Err(GraphError::InfeasibleDegrees { n, m, c });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget: u64 = 1000 * (n as u64) * (c as u64);
    let mut picks: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut mine: Vec<usize> = Vec::with_capacity(c);
        while mine.len() < c {
            let check = rng.gen_range(0..m);
            if mine.contains(&check) {
                budget = budget
                    .checked_sub(1)
                    .ok_or(GraphError::ResampleBudgetExhausted)?;
                continue;
            }
            mine.push(check);
        }
        picks.push(mine);
    }
    // Prune zero-degree checks, renumbering the survivors in order.
    let mut used = vec![false; m];
    for mine in &picks {
        for &check in mine {
            used[check] = true;
        }
    }
    let mut renumber = vec![usize::MAX; m];
    let mut m_eff = 0;
    for check in 0..m {
        if used[check] {
            renumber[check] = m_eff;
            m_eff += 1;
        }
    }
    let mut edges = Vec::with_capacity(n * c);
    for (variable, mine) in picks.iter().enumerate() {
        for &check in mine {
            edges.push((variable, renumber[check]));
        }
    }
    build_graph(n, m_eff, &edges)
}

impl TannerGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Uniform left degree c, when every variable has the same degree.
    pub fn left_degree(&self) -> Option<usize> {
        self.uniform_left_degree
    }

    pub fn var_checks(&self, variable: usize) -> &[usize] {
        &self.var_checks[variable]
    }

    pub fn check_vars(&self, check: usize) -> &[usize] {
        &self.check_vars[check]
    }

    pub fn var_degree(&self, variable: usize) -> usize {
        self.var_checks[variable].len()
    }

    pub fn check_degree(&self, check: usize) -> usize {
        self.check_vars[check].len()
    }

    pub fn max_check_degree(&self) -> usize {
        self.check_vars.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge list sorted by (variable, check).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for variable in 0..self.n {
            for &check in &self.var_checks[variable] {
                edges.push((variable, check));
            }
        }
        edges
    }

    pub fn has_edge(&self, variable: usize, check: usize) -> bool {
        variable < self.n && self.var_checks[variable].binary_search(&check).is_ok()
    }
}

/// Parity of each check's neighborhood under w, over F2.
pub fn syndrome(g: &TannerGraph, w: &BitWord) -> Result<BitWord, GraphError> {
    if w.len() != g.n() {
        return Err(GraphError::LengthMismatch {
            expected: g.n(),
            found: w.len(),
        });
    }
    let mut bits = vec![false; g.m()];
    for (check, parity) in bits.iter_mut().enumerate() {
        let ones = g
            .check_vars(check)
            .iter()
            .filter(|&&variable| w.get(variable))
            .count();
        *parity = ones % 2 == 1;
    }
    Ok(BitWord::from_bits(bits))
}

pub fn is_codeword(g: &TannerGraph, w: &BitWord) -> Result<bool, GraphError> {
    Ok(syndrome(g, w)?.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Exact(usize),
    AboveCap,
}

/// Minimum weight of a nonzero codeword, by enumerating supports of
/// weight 1..=weight_cap in lexicographic order.
pub fn min_distance(g: &TannerGraph, weight_cap: usize) -> MinDistance {
    let n = g.n();
    let mut parity = vec![false; g.m()];
    for weight in 1..=weight_cap.min(n) {
        let mut found = false;
        for_each_combination(n, weight, |support| {
            parity.iter_mut().for_each(|p| *p = false);
            for &variable in support {
                for &check in g.var_checks(variable) {
                    parity[check] = !parity[check];
                }
            }
            if parity.iter().all(|&p| !p) {
                found = true;
                return false;
            }
            true
        });
        if found {
            return MinDistance::Exact(weight);
        }
    }
    MinDistance::AboveCap
}

/// All codewords, sorted lexicographically, via F2 kernel enumeration
/// of the parity-check matrix. Fails when n > 64 or the code dimension
/// exceeds 24.
pub fn codewords(g: &TannerGraph) -> Result<Vec<BitWord>, GraphError> {
    let basis = kernel_basis(g)?;
    let k = basis.len();
    if k > 24 {
        return Err(GraphError::KernelTooLarge { dim: k });
    }
    let n = g.n();
    let mut words = Vec::with_capacity(1usize << k);
    for combo in 0u64..(1u64 << k) {
        let mut word: u64 = 0;
        for (pos, vec) in basis.iter().enumerate() {
            if combo >> pos & 1 == 1 {
                word ^= vec;
            }
        }
        words.push(BitWord::from_bits(
            (0..n).map(|i| word >> i & 1 == 1).collect(),
        ));
    }
    words.sort();
    Ok(words)
}

/// Code dimension k = n - rank(H) over F2.
pub fn code_dimension(g: &TannerGraph) -> Result<usize, GraphError> {
    Ok(kernel_basis(g)?.len())
}

/// Kernel basis of the parity-check matrix, variables packed into u64
/// masks (bit i = variable i).
fn kernel_basis(g: &TannerGraph) -> Result<Vec<u64>, GraphError> {
    let n = g.n();
    if n > 64 {
        return Err(GraphError::WordSpaceTooLarge("kernel enumeration"));
    }
    let mut rows: Vec<u64> = (0..g.m())
        .map(|check| {
            g.check_vars(check)
                .iter()
                .fold(0u64, |acc, &variable| acc | 1 << variable)
        })
        .collect();
    // Reduced row echelon form; pivot_of[col] = row holding that pivot.
    let mut pivot_of: Vec<Option<usize>> = vec![None; n];
    let mut next_row = 0;
    for col in 0..n {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot_row = rows[next_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && *row >> col & 1 == 1 {
                *row ^= pivot_row;
            }
        }
        pivot_of[col] = Some(next_row);
        next_row += 1;
    }
    let mut basis = Vec::new();
    for free_col in 0..n {
        if pivot_of[free_col].is_some() {
            continue;
        }
        let mut vec = 1u64 << free_col;
        for col in 0..n {
            if let Some(row) = pivot_of[col] {
                if rows[row] >> free_col & 1 == 1 {
                    vec |= 1 << col;
                }
            }
        }
        basis.push(vec);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2-regular cycle on three variables and three checks.
    pub(crate) fn cycle3() -> TannerGraph {
        build_graph(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    fn single_check() -> TannerGraph {
        build_graph(2, 1, &[(0, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn builds_smallest_parity_check() {
        let g = single_check();
        assert_eq!(g.left_degree(), Some(1));
        assert_eq!(g.check_vars(0), &[0, 1]);
    }

    #[test]
    fn builds_cycle_graph() {
        let g = cycle3();
        assert_eq!(g.left_degree(), Some(2));
        assert_eq!(g.check_vars(0), &[0, 2]);
        assert_eq!(g.check_vars(1), &[0, 1]);
        assert_eq!(g.check_vars(2), &[1, 2]);
    }

    #[test]
    fn rejects_invalid_edge_lists() {
        let dup = build_graph(2, 1, &[(0, 0), (0, 0), (1, 0)]);
        assert_eq!(
            dup.unwrap_err(),
            GraphError::DuplicateEdge {
                variable: 0,
                check: 0
            }
        );
        assert!(matches!(
            build_graph(2, 1, &[(0, 0), (2, 0)]).unwrap_err(),
            GraphError::VariableOutOfRange { index: 2, n: 2 }
        ));
        assert!(matches!(
            build_graph(2, 1, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::CheckOutOfRange { index: 1, m: 1 }
        ));
        assert!(matches!(
            build_graph(3, 2, &[(0, 0), (0, 1), (1, 0), (2, 0)]).unwrap_err(),
            GraphError::NonUniformLeftDegree { .. }
        ));
        assert!(matches!(
            build_graph(2, 2, &[(0, 0), (1, 0)]).unwrap_err(),
            GraphError::ZeroDegreeCheck { check: 1 }
        ));
    }

    #[test]
    fn nonuniform_flag_relaxes_only_degree_uniformity() {
        let g = build_graph_nonuniform(3, 2, &[(0, 0), (0, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.left_degree(), None);
        assert_eq!(g.var_degree(0), 2);
        assert!(build_graph_nonuniform(2, 1, &[(0, 0), (0, 0), (1, 0)]).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_regular(10, 5, 3, 7).unwrap();
        let b = generate_regular(10, 5, 3, 7).unwrap();
        assert_eq!(a, b);
        let c = generate_regular(10, 5, 3, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generation_prunes_unused_checks() {
        // 8 edges cannot reach 20 checks, so some must be pruned.
        let g = generate_regular(4, 20, 2, 1).unwrap();
        assert!(g.m() <= 8);
        assert_eq!(g.left_degree(), Some(2));
        for check in 0..g.m() {
            assert!(g.check_degree(check) >= 1);
        }
    }

    #[test]
    fn generated_degrees_match_edge_list_count() {
        let g = generate_regular(12, 9, 3, 3).unwrap();
        let mut degree = vec![0usize; g.n()];
        for (variable, _) in g.edges() {
            degree[variable] += 1;
        }
        assert!(degree.iter().all(|&d| d == 3));
        assert_eq!(g.left_degree(), Some(3));
    }

    #[test]
    fn generation_rejects_infeasible_degrees() {
        assert!(matches!(
            generate_regular(4, 2, 3, 0).unwrap_err(),
            GraphError::InfeasibleDegrees { .. }
        ));
        assert!(generate_regular(4, 0, 1, 0).is_err());
    }

    #[test]
    fn syndrome_matches_hand_computation() {
        let g = cycle3();
        let zero = BitWord::zero(3);
        assert!(syndrome(&g, &zero).unwrap().is_zero());
        let ones: BitWord = "111".parse().unwrap();
        assert!(syndrome(&g, &ones).unwrap().is_zero());
        let e0: BitWord = "100".parse().unwrap();
        assert_eq!(syndrome(&g, &e0).unwrap().to_string(), "110");
        assert!(syndrome(&g, &BitWord::zero(4)).is_err());
    }

    #[test]
    fn syndrome_agrees_with_direct_parity_oracle() {
        let g = generate_regular(6, 5, 3, 11).unwrap();
        for word_bits in 0u32..(1 << 6) {
            let w = BitWord::from_bits((0..6).map(|i| word_bits >> i & 1 == 1).collect());
            let s = syndrome(&g, &w).unwrap();
            for check in 0..g.m() {
                let parity: usize = g.check_vars(check).iter().filter(|&&v| w.get(v)).count();
                assert_eq!(s.get(check), parity % 2 == 1);
            }
        }
    }

    #[test]
    fn min_distance_on_known_codes() {
        assert_eq!(min_distance(&single_check(), 2), MinDistance::Exact(2));
        assert_eq!(min_distance(&cycle3(), 3), MinDistance::Exact(3));
        assert_eq!(min_distance(&cycle3(), 2), MinDistance::AboveCap);
    }

    #[test]
    fn codewords_on_known_codes() {
        let words: Vec<String> = codewords(&cycle3())
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["000", "111"]);
        let words: Vec<String> = codewords(&single_check())
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["00", "11"]);
    }

    #[test]
    fn codeword_predicate_matches_kernel_enumeration() {
        for seed in 0..5 {
            let g = generate_regular(8, 6, 3, seed).unwrap();
            let listed = codewords(&g).unwrap();
            let mut direct = Vec::new();
            for word_bits in 0u32..(1 << 8) {
                let w = BitWord::from_bits((0..8).map(|i| word_bits >> i & 1 == 1).collect());
                if is_codeword(&g, &w).unwrap() {
                    direct.push(w);
                }
            }
            direct.sort();
            assert_eq!(listed, direct, "seed {seed}");
            assert_eq!(listed.len(), 1 << code_dimension(&g).unwrap());
        }
    }

    #[test]
    fn min_distance_agrees_with_codeword_oracle() {
        for seed in 0..5 {
            let g = generate_regular(9, 7, 3, seed).unwrap();
            let best = codewords(&g)
                .unwrap()
                .iter()
                .filter(|w| !w.is_zero())
                .map(BitWord::weight)
                .min();
            match min_distance(&g, 9) {
                MinDistance::Exact(d) => assert_eq!(Some(d), best),
                MinDistance::AboveCap => assert_eq!(None, best),
            }
        }
    }
}
