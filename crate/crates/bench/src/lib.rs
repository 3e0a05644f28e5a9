//! Shared inputs for the benchmarks.

use gmhm::Gem;

/// A chain of dipoles on the order-2 sphere gem: a non-contracted gem with
/// `2 + 2k` vertices and several cycles per colour pair.
pub fn dipole_chain(k: usize) -> Gem {
    let mut g = Gem::standard_sphere();
    for i in 0..k {
        g = g.insert_dipole(i % g.order(), (i % 4) as u8);
    }
    g.with_name(format!("dipole_chain_{k}"))
}
