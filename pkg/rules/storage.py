"""
Rule files: a header line 'n m labels' followed by one '<profile> -> <label>'
line per domain profile. Blank lines and '#' comments are ignored.
"""

import logging

from core.codec import parse_profile
from core.exceptions import NPVerifyError, RuleFileError

from .models import Rule

logger = logging.getLogger(__name__)

ARROW = '->'


def save_rule(rule, sink):
    spec = rule.spec
    sink.write(f"{spec.n} {spec.m} {spec.labels}\n")
    for p, a in zip(rule.domain, rule.choice):
        sink.write(f"{p.to_text(spec.labels)} {ARROW} {spec.label_of(a)}\n")


def _content_lines(source):
    for number, raw in enumerate(source, start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line


def load_rule(source, domain, name=''):
    """Read a complete rule table for `domain`; partial tables are rejected."""
    spec = domain.spec
    lines = _content_lines(source)
    try:
        number, header = next(lines)
    except StopIteration:
        raise RuleFileError("rule file is empty") from None
    fields = header.split()
    if len(fields) != 3 or not fields[0].isdigit() or not fields[1].isdigit():
        raise RuleFileError(f"expected header 'n m labels', got {header!r}", number)
    if (int(fields[0]), int(fields[1]), fields[2]) != (spec.n, spec.m, spec.labels):
        raise RuleFileError(
            f"rule file is for ({fields[0]},{fields[1]}) over {fields[2]!r}, "
            f"domain is {spec} over {spec.labels!r}",
            number,
        )

    choice = [None] * len(domain)
    for number, line in lines:
        profile_text, arrow, label = line.rpartition(ARROW)
        if not arrow:
            raise RuleFileError(f"expected '<profile> {ARROW} <label>', got {line!r}", number)
        try:
            profile = parse_profile(profile_text, spec)
            k = domain.position(profile)
            a = spec.index_of(label.strip())
        except NPVerifyError as exc:
            raise RuleFileError(str(exc), number) from exc
        if choice[k] is not None:
            raise RuleFileError(f"duplicate entry for {profile.to_text(spec.labels)}", number)
        choice[k] = a

    missing = [k for k, a in enumerate(choice) if a is None]
    if missing:
        first = domain[missing[0]].to_text(spec.labels)
        raise RuleFileError(f"no entry for profile {first} ({len(missing)} profiles missing)")
    logger.info(f"Loaded rule table for {domain!r}")
    return Rule(domain, tuple(choice), name)
