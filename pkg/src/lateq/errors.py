"""Exception hierarchy shared by every lateq module."""


class LateqError(Exception):
    """Base class for all errors raised by lateq."""


class NotAPoset(LateqError):
    def __init__(self, axiom, pair):
        self.axiom = axiom
        self.pair = tuple(pair)
        super().__init__(f"relation is not {axiom}: violated at {self.pair!r}")


class NotALattice(LateqError):
    def __init__(self, missing, pair):
        self.missing = missing
        self.pair = tuple(pair)
        super().__init__(f"pair {self.pair!r} has no {missing}")


class EmptyFactorList(LateqError):
    pass


class BudgetExceeded(LateqError):
    def __init__(self, needed, budget):
        self.needed = needed
        self.budget = budget
        super().__init__(f"enumeration needs {needed} evaluations, budget is {budget}")


class UnknownProperty(LateqError):
    pass


class UnknownPlayer(LateqError):
    pass


class UnknownTheorem(LateqError):
    pass


class NotMonotone(LateqError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"map is not increasing: {self.pair[0]!r} <= {self.pair[1]!r} "
                         "but their images are not ordered")


class NotWeaklyAscending(LateqError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"correspondence is not weakly ascending, witness {witness!r}")


class SelectionSearchFailed(LateqError):
    pass


class SelectionNotMonotone(LateqError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"joint selection is not increasing at {self.pair!r}")


class NotClosedUnderBound(LateqError):
    def __init__(self, player, profile, bound):
        self.player = player
        self.profile = profile
        self.bound = bound
        super().__init__(f"best response of player {player!r} at {profile!r} "
                         f"is not closed under {bound}")
