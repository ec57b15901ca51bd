//! Attractor covers, box dimension and the removal construction.

use pentarot::fractal::{self, IfsSystem};

#[test]
fn yprime_box_dimension_near_log4_over_log_omega2() {
    let pts = fractal::chaos_game(&IfsSystem::yprime(), 200_000, 7);
    let d = fractal::box_dimension(&pts, 3..=7);
    let target = 4f64.ln() / (1.618_033_988_749_895f64 * 1.618_033_988_749_895).ln();
    assert!((target - 1.4404).abs() < 1e-4);
    assert!((d - 1.4404).abs() <= 0.05, "estimated {d}");
}

#[test]
fn chaos_game_is_deterministic() {
    let a = fractal::chaos_game(&IfsSystem::dual(), 1000, 3);
    let b = fractal::chaos_game(&IfsSystem::dual(), 1000, 3);
    assert_eq!(a, b);
    assert_ne!(a, fractal::chaos_game(&IfsSystem::dual(), 1000, 4));
}

#[test]
fn covers_grow_by_the_map_count() {
    for (system, maps) in [(IfsSystem::y(), 6usize), (IfsSystem::yprime(), 4), (IfsSystem::dual(), 4)] {
        for depth in 0..=3 {
            assert_eq!(fractal::attractor_cover(&system, depth).len(), maps.pow(depth as u32));
        }
    }
}

#[test]
fn removal_counts_are_powers_of_four() {
    for i in 0..=4 {
        assert_eq!(fractal::pentagon_removal(i).len(), 4usize.pow(i as u32));
    }
}
