//! Symmetric-group characters from the Murnaghan-Nakayama rule, used as an
//! independent oracle for the character-table and Specht-module code.

use killing_core::specht::Partition;

/// χ^λ at cycle type μ, removing rim hooks of length μ_1, μ_2, ... on the
/// beta-set (abacus) of λ.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    let len = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    remove_hooks(&beta, mu.parts())
}

fn remove_hooks(beta: &[usize], hooks: &[usize]) -> i64 {
    let Some((&k, rest)) = hooks.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.to_vec();
        next[i] = b - k;
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * remove_hooks(&next, rest);
    }
    total
}
