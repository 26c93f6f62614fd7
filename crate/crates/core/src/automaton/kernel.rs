// SPDX-License-Identifier: Apache-2.0

//! The `k`-kernel `{ n -> a(k^alpha n + r) }` as state reachability.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::Dfao;

/// A kernel sequence, given by the state it starts from and a witness
/// `(alpha, r)` with `0 <= r < k^alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelElement {
    pub state: usize,
    pub alpha: u32,
    pub r: BigUint,
}

impl KernelElement {
    /// The automaton producing `n -> a(k^alpha n + r)` for `n >= 1`.
    pub fn sequence(&self, d: &Dfao) -> Dfao {
        d.with_initial(self.state)
    }
}

/// One element per state reachable from `s_0`, in breadth-first order
/// (so witnesses are shortest). The first element is `(0, 0)` at `s_0`.
pub fn k_kernel(d: &Dfao) -> Vec<KernelElement> {
    let k = BigUint::from(d.base());
    let mut witness: Vec<Option<(u32, BigUint)>> = vec![None; d.num_states()];
    witness[d.initial()] = Some((0, BigUint::default()));
    let mut order = vec![d.initial()];
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(s) = queue.pop_front() {
        let (alpha, r) = witness[s].clone().expect("queued states have witnesses");
        let scale = k.pow(alpha);
        for c in 0..d.base() {
            let t = d.step(s, c);
            if witness[t].is_none() {
                witness[t] = Some((alpha + 1, &r + &scale * c));
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    order
        .into_iter()
        .map(|state| {
            let (alpha, r) = witness[state].clone().unwrap();
            KernelElement { state, alpha, r }
        })
        .collect()
}

/// `beta < gamma <= |S| + 1` with `delta_{(1)_k^beta}(s_0) =
/// delta_{(1)_k^gamma}(s_0)`, so `a(k^beta n + 1) = a(k^gamma n + 1)` for
/// all `n >= 1`. Exponents start at 1 since `r = 1` needs `k^alpha > 1`.
pub fn kernel_shift_pair(d: &Dfao) -> (u32, u32) {
    let mut first_seen = vec![None; d.num_states()];
    // (1)_k^1 = "1"; each further step prepends a zero.
    let mut s = d.step(d.initial(), 1);
    let mut alpha = 1u32;
    loop {
        if let Some(beta) = first_seen[s] {
            return (beta, alpha);
        }
        first_seen[s] = Some(alpha);
        s = d.step(s, 0);
        alpha += 1;
    }
}
