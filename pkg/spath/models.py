from dataclasses import dataclass
from typing import Optional

from core.exceptions import PreconditionError
from core.models import Profile


@dataclass(frozen=True)
class SPath:
    """
    A walk through NP that keeps every restriction to `s_set` fixed.

    Consecutive steps differ in at most one individual's ordering.
    """

    s_set: frozenset
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, 's_set', frozenset(self.s_set))
        object.__setattr__(self, 'steps', tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    @property
    def start(self) -> Profile:
        return self.steps[0]

    @property
    def end(self) -> Profile:
        return self.steps[-1]

    def reversed(self):
        return SPath(self.s_set, self.steps[::-1])

    def concatenate(self, other):
        if self.s_set != other.s_set:
            raise PreconditionError("only paths for the same S can be joined")
        if self.end != other.start:
            raise PreconditionError("paths must share the joining profile")
        return SPath(self.s_set, self.steps + other.steps[1:])


@dataclass(frozen=True)
class PathValidation:
    valid: bool
    violation: Optional[str] = None
    step: Optional[int] = None

    def __bool__(self):
        return self.valid


def validate_spath(path, u, v):
    """Check the path joins u to v inside NP, one individual at a time, fixing S."""
    steps = path.steps
    if not steps:
        return PathValidation(False, 'path is empty', None)
    if steps[0] != u:
        return PathValidation(False, 'path does not start at u', 1)
    if steps[-1] != v:
        return PathValidation(False, 'path does not end at v', len(steps))
    previous = None
    for t, w in enumerate(steps, start=1):
        if not w.is_np_member():
            return PathValidation(False, 'profile is not in NP', t)
        if previous is not None:
            if w.n != previous.n or w.alternatives != previous.alternatives:
                return PathValidation(False, 'profile changes individuals or alternatives', t)
            changed = sum(1 for a, b in zip(w.orderings, previous.orderings) if a != b)
            if changed > 1:
                return PathValidation(False, f'{changed} individuals change at once', t)
            if w.restriction_key(path.s_set) != previous.restriction_key(path.s_set):
                return PathValidation(False, 'restriction to S changes', t)
        previous = w
    return PathValidation(True)
