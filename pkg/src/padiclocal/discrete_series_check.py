"""Symbolic verifier for the weight-two rotation module at the real place.

The module is a two-sided ladder of rotation eigenvectors indexed by even
weights 2k, truncated at |k| <= K_max.  The raising and lowering operators
act through the band coefficients 1+k and 1-k, the rotation subgroup acts
through formal characters indexed by 2k, and a reflection acts by an index
flip times a sign table.  Everything here is a coefficient identity over
the rationals; no floating trigonometry appears anywhere.
"""

from fractions import Fraction


class TruncatedGOModule:
    """The ladder truncated at |k| <= k_max, with one reflection structure.

    lambda_table maps each index to the reflection sign; pass a callable or
    one of the two constant signs.
    """

    def __init__(self, k_max: int, lambda_table=1):
        if k_max < 2:
            raise ValueError("truncation window must reach |k| = 2")
        self.k_max = k_max
        if callable(lambda_table):
            self.lam = {k: Fraction(lambda_table(k))
                        for k in range(-k_max, k_max + 1)}
        else:
            self.lam = {k: Fraction(lambda_table)
                        for k in range(-k_max, k_max + 1)}

    def _check_interior(self, k: int):
        if abs(k) >= self.k_max:
            raise ValueError("index at the truncation boundary")

    def apply_R(self, k: int):
        """Raising: coefficient 1+k onto index k+1."""
        self._check_interior(k)
        return Fraction(1 + k), k + 1

    def apply_L(self, k: int):
        """Lowering: coefficient 1-k onto index k-1."""
        self._check_interior(k)
        return Fraction(1 - k), k - 1

    def rotation_exponent(self, k: int) -> int:
        """The formal character index of the rotation action on weight 2k."""
        return 2 * k

    def apply_omega(self, k: int):
        """Reflection: sign lambda(k) onto the flipped index."""
        return self.lam[k], -k


def verify_ladder_relations(module: TruncatedGOModule) -> bool:
    """Interior consistency of the band tables: the commutator of lowering
    against raising is multiplication by -2k, forced by the coefficients."""
    for k in range(-module.k_max + 2, module.k_max - 1):
        c_up, j = module.apply_R(k)
        c_down, j2 = module.apply_L(j)
        assert j2 == k
        lr = c_down * c_up
        c_down, j = module.apply_L(k)
        c_up, j2 = module.apply_R(j)
        assert j2 == k
        rl = c_up * c_down
        if lr - rl != -2 * k:
            return False
    return True


def verify_omega_structure(module: TruncatedGOModule) -> bool:
    """The three reflection conditions on the truncated window.

    The index flip is built in; what remains is the involution condition
    lambda(k)lambda(-k) = 1 on the whole window and the exchange relation
    against raising, which on coefficients reads
    lambda(k+1)(1+k) = lambda(k)(1+k) for every interior k.
    """
    for k in range(-module.k_max, module.k_max + 1):
        sign, flipped = module.apply_omega(k)
        if flipped != -k or sign * module.lam[-k] != 1:
            return False
    for k in range(-module.k_max + 1, module.k_max):
        coeff, j = module.apply_R(k)
        left = module.lam[j] * coeff
        right = module.lam[k] * coeff
        if left != right:
            return False
    return True


def verify_rotation_exchange(module: TruncatedGOModule) -> bool:
    """Reflection conjugates the rotation action into its inverse: the
    character index after the flip is the negative of the one before."""
    return all(
        module.rotation_exponent(module.apply_omega(k)[1])
        == -module.rotation_exponent(k)
        for k in range(-module.k_max, module.k_max + 1)
    )


def solve_omega_structures(k_max: int):
    """All sign tables satisfying the reflection conditions, by constraint
    propagation: the exchange relation chains neighbours with nonzero
    raising coefficient into one class, the involution condition ties each
    index to its negative and squares the class value to 1.  The result is
    the list of valid tables; the theory expects exactly the two constants.
    """
    indices = list(range(-k_max, k_max + 1))
    parent = {k: k for k in indices}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        parent[find(a)] = find(b)

    for k in range(-k_max + 1, k_max):
        if 1 + k != 0:
            union(k, k + 1)
    # merging each index with its negative is harmless: the involution
    # condition at index 0 squares that class's value to 1, the chains
    # connect every index to 0 or to a merged reciprocal pair, so every
    # class value is forced into {+1, -1} and the final filter re-checks
    # the involution on the full table
    for k in indices:
        union(k, -k)
    roots = {find(k) for k in indices}
    solutions = []
    for assignment in _sign_assignments(sorted(roots)):
        table = {k: assignment[find(k)] for k in indices}
        if all(table[k] * table[-k] == 1 for k in indices):
            solutions.append(table)
    return solutions


def _sign_assignments(roots):
    for mask in range(2 ** len(roots)):
        yield {
            root: Fraction(1) if mask >> i & 1 else Fraction(-1)
            for i, root in enumerate(roots)
        }


def projection_coefficient(k: int) -> Fraction:
    """Coefficient of the half-turn period in the averaging map: the
    character of weight 2k integrates over a half turn to zero unless
    k = 0, where the integral is the period itself."""
    return Fraction(1) if k == 0 else Fraction(0)


def kernel_is_stable(module: TruncatedGOModule) -> bool:
    """The span of the nonzero-index vectors is closed under both ladder
    operators: any step landing on index 0 must carry coefficient 0."""
    for k in range(-module.k_max + 1, module.k_max):
        if k == 0:
            continue
        for coeff, j in (module.apply_R(k), module.apply_L(k)):
            if j == 0 and coeff != 0:
                return False
    return True


def sign_twist_intertwines(plus: TruncatedGOModule,
                           minus: TruncatedGOModule) -> bool:
    """The index-sign map between the two projection kernels respects the
    ladder operators and exchanges the two reflection structures."""
    if plus.k_max != minus.k_max:
        raise ValueError("truncation windows must agree")

    def twist(k):
        return Fraction(1) if k > 0 else Fraction(-1)

    k_max = plus.k_max
    for k in range(-k_max, k_max + 1):
        if k == 0:
            continue
        sign_p, j = plus.apply_omega(k)
        sign_m, j_m = minus.apply_omega(k)
        assert j == j_m == -k
        if twist(-k) * sign_p != sign_m * twist(k):
            return False
        if abs(k) >= k_max:
            continue
        for op in ("apply_R", "apply_L"):
            coeff, j = getattr(plus, op)(k)
            if j == 0:
                continue
            if coeff * twist(j) != coeff * twist(k):
                return False
    return True


def verify_extension_structure(k_max: int = 20) -> bool:
    """The two extensions of the projection kernel: averaging kills every
    nonzero index and not the zero one, the kernel is ladder-stable, and
    the sign twist identifies the kernels inside the two structures."""
    if k_max < 3:
        raise ValueError("needs truncation window at least 3")
    plus = TruncatedGOModule(k_max, 1)
    minus = TruncatedGOModule(k_max, -1)
    if projection_coefficient(0) == 0:
        return False
    if any(projection_coefficient(k) for k in range(-k_max, k_max + 1) if k):
        return False
    return (
        kernel_is_stable(plus)
        and kernel_is_stable(minus)
        and sign_twist_intertwines(plus, minus)
    )
