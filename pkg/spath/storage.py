"""Path dump format: 'S=<labels>' then one profile string per line."""

from core.codec import format_profile, parse_alternatives, parse_profile
from core.exceptions import ProfileParseError

from .models import SPath


def dump_spath(path, spec, stream):
    stream.write(f"S={spec.labels_for(path.s_set)}\n")
    for step in path.steps:
        stream.write(format_profile(step, spec) + '\n')


def load_spath(stream, spec):
    lines = [line.strip() for line in stream if line.strip()]
    if not lines or not lines[0].startswith('S='):
        raise ProfileParseError("path dump must start with an 'S=<labels>' header")
    s_set = parse_alternatives(lines[0][2:], spec)
    return SPath(s_set, tuple(parse_profile(line, spec) for line in lines[1:]))
