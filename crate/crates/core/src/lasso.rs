//! Membership of ultimately periodic words.

use crate::automaton::{Lasso, ParityAutomaton};
use crate::graph::{even_cycle, EdgeGraph};

/// Whether some run of `a` from `from` on `w` is accepting.
///
/// Builds the product of `a` with the positions of the lasso and looks for
/// a reachable cycle whose maximal priority is even. Positions inside the
/// spoke are visited at most once, so every cycle lives on the periodic part.
pub fn lasso_accepts(a: &ParityAutomaton, w: &Lasso, from: usize) -> bool {
    let spoke = w.spoke().len();
    let len = spoke + w.cycle().len();
    let next = |pos: usize| if pos + 1 < len { pos + 1 } else { spoke };
    let node = |q: usize, pos: usize| q * len + pos;

    let mut edges = Vec::new();
    let mut priorities = Vec::new();
    for q in 0..a.num_states() {
        for pos in 0..len {
            for t in a.out(q, w.letter_at(pos)) {
                edges.push((node(q, pos), node(t.dst, next(pos))));
                priorities.push(t.priority);
            }
        }
    }
    let g = EdgeGraph::new(a.num_states() * len, edges);
    let (_, hi) = a.index();
    even_cycle(&g, &[node(from, 0)], |e| priorities[e], hi).is_some()
}

/// Calls `f` on every lasso with `|u| <= max_u` and `1 <= |v| <= max_v`,
/// shortest spokes first, then shortest cycles, each length in
/// lexicographic letter order. Stops early when `f` returns `false`.
pub fn for_each_lasso(num_letters: usize, max_u: usize, max_v: usize, mut f: impl FnMut(&Lasso) -> bool) {
    for ulen in 0..=max_u {
        let mut go_on = true;
        for_each_word(num_letters, ulen, |u| {
            for vlen in 1..=max_v {
                let mut inner = true;
                for_each_word(num_letters, vlen, |v| {
                    inner = f(&Lasso::new(u.to_vec(), v.to_vec()).expect("non-empty cycle"));
                    inner
                });
                if !inner {
                    go_on = false;
                    return false;
                }
            }
            true
        });
        if !go_on {
            return;
        }
    }
}

/// Calls `f` on every word of length `len` in lexicographic order until it
/// returns `false`.
pub fn for_each_word(num_letters: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut word = vec![0; len];
    loop {
        if !f(&word) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < num_letters {
                break;
            }
            word[i] = 0;
        }
    }
}
