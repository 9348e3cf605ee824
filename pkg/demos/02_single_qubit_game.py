"""Two-player CHSH game vs. its single-qubit counterpart.

Any four local unitaries define both a two-player strategy (on the Bell
state) and a single-player strategy (on |+>). This script tabulates both
games for a few strategies -- their win statistics coincide input by input
-- and finishes with a seeded Monte-Carlo run of the optimal strategy.
"""

import math

import numpy as np

from ghzbell import (
    chsh_game_value,
    chsh_star_value,
    identity_strategy,
    optimal_strategy,
    play_monte_carlo,
    random_strategy,
)

rng = np.random.default_rng(8)
strategies = [
    ("identity", identity_strategy()),
    ("optimal", optimal_strategy()),
    ("random #1", random_strategy(rng)),
    ("random #2", random_strategy(rng)),
]

print(f"{'strategy':<10} {'I (2-player)':>14} {'I (1-player)':>14} {'success':>10}")
for name, s in strategies:
    two = chsh_game_value(s)
    one = chsh_star_value(s)
    print(
        f"{name:<10} {two.i_value:>14.10f} {one.i_value:>14.10f} "
        f"{two.success_probability:>10.6f}"
    )

best = chsh_game_value(optimal_strategy())
print("\nper-input win probabilities of the optimal strategy (rows a, cols b):")
for row in best.per_input_win_prob:
    print("  " + "  ".join(f"{p:.6f}" for p in row))
print(f"quantum optimum (2+sqrt(2))/4 = {(2 + math.sqrt(2)) / 4:.10f}")

print("\nMonte-Carlo, optimal strategy, both games, 100000 shots, seed 42:")
for game in ("chsh", "chsh_star"):
    mc = play_monte_carlo(optimal_strategy(), game, shots=100000, seed=42)
    print(f"  {game:<10} estimate {mc.estimate:.5f} +- {mc.std_error:.5f}")
