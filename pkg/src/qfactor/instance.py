"""Factorization problem encoding: register sizing, state decoding, solution search.

An odd semiprime N = p * q with odd factors is encoded on n = n_p + n_q
qubits holding p' = (p-1)/2 and q' = (q-1)/2 in binary. The p' register
occupies the low bits of the basis index, little-endian within each register.
"""

from dataclasses import dataclass
from math import isqrt

MAX_QUBITS = 16

# Benchmark set of odd semiprimes, 3 to 8 qubits.
BENCHMARK_NUMBERS = (15, 21, 25, 35, 39, 51, 77, 87, 95, 115, 119, 143)


def _odd_floor(x: int) -> int:
    """Largest odd integer <= x (x a positive integer)."""
    return x if x % 2 == 1 else x - 1


def qubit_counts(N: int) -> tuple[int, int]:
    """Register widths (n_p, n_q) for factoring the odd number N.

    n_p bounds p' via the largest odd integer <= sqrt(N); n_q bounds q'
    via the largest odd integer <= N // 3 (q is odd, so the even bound
    N // 3 can always be tightened to the odd integer below it).
    """
    if N < 9:
        raise ValueError(f"N must be at least 9, got {N}")
    if N % 2 == 0:
        raise ValueError(f"N must be odd, got {N}")
    n_p = _odd_floor(isqrt(N)).bit_length() - 1
    n_q = _odd_floor(N // 3).bit_length() - 1
    if n_p < 1 or n_q < 1:
        raise ValueError(f"register bound collapsed for N={N}")
    return n_p, n_q


def decode_state(b: int, n_p: int, n_q: int) -> tuple[int, int]:
    """Odd candidate factors (p, q) encoded by basis index b.

    Bits 0..n_p-1 of b hold p' little-endian, bits n_p..n_p+n_q-1 hold q'.
    """
    p_prime = b & ((1 << n_p) - 1)
    q_prime = (b >> n_p) & ((1 << n_q) - 1)
    return 2 * p_prime + 1, 2 * q_prime + 1


def state_to_string(b: int, n: int) -> str:
    """Bitstring x_0 x_1 ... y_0 y_1 ... (least-significant bit first)."""
    return "".join(str((b >> j) & 1) for j in range(n))


def string_to_state(s: str) -> int:
    """Inverse of state_to_string."""
    return int(s[::-1], 2)


@dataclass(frozen=True)
class ProblemInstance:
    """A semiprime with its register layout and enumerated solution states."""

    N: int
    n_p: int
    n_q: int
    solutions: frozenset[int]

    @property
    def n(self) -> int:
        return self.n_p + self.n_q

    @property
    def dim(self) -> int:
        return 1 << self.n

    def decode(self, b: int) -> tuple[int, int]:
        return decode_state(b, self.n_p, self.n_q)

    def state_string(self, b: int) -> str:
        return state_to_string(b, self.n)

    def solution_strings(self) -> list[str]:
        return sorted(self.state_string(b) for b in self.solutions)


def enumerate_solutions(N: int, n_p: int, n_q: int) -> frozenset[int]:
    """All basis indices b with decode(b) multiplying to N, by exhaustive scan."""
    n = n_p + n_q
    found = set()
    for b in range(1 << n):
        p, q = decode_state(b, n_p, n_q)
        if p * q == N:
            found.add(b)
    if not found:
        raise ValueError(
            f"no factorization of {N} fits the registers; "
            "N is prime or the register bound is wrong"
        )
    return frozenset(found)


def make_instance(N: int) -> ProblemInstance:
    """Build a validated ProblemInstance for an odd composite N."""
    n_p, n_q = qubit_counts(N)
    if n_p + n_q > MAX_QUBITS:
        raise ValueError(
            f"N={N} needs {n_p + n_q} qubits, above the {MAX_QUBITS}-qubit limit"
        )
    return ProblemInstance(N=N, n_p=n_p, n_q=n_q,
                           solutions=enumerate_solutions(N, n_p, n_q))


def benchmark_instances() -> list[ProblemInstance]:
    return [make_instance(N) for N in BENCHMARK_NUMBERS]
