"""Breadth-first reachability inside fibers, used to cross-check the builders."""

import logging
from functools import lru_cache
from typing import Optional

import networkx as nx

from core.enumeration import enumerate_np
from core.exceptions import PreconditionError
from core.models import DomainSpec

from .models import SPath

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def variant_graph(domain):
    """Undirected graph on domain indices joining h-variants."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(domain)))
    for p, h, q in domain.variant_pairs():
        if p < q:
            graph.add_edge(p, q, individual=h)
    logger.info(f"Built h-variant graph of {domain!r}: {graph.number_of_edges()} edges")
    return graph


def fibers(domain, s_set):
    """Domain indices grouped by restriction to S, in order of first member."""
    groups = {}
    for k, p in enumerate(domain):
        groups.setdefault(p.restriction_key(s_set), []).append(k)
    return groups


def fiber_components(domain, members):
    """Map each fiber member to the id of its connected component."""
    subgraph = variant_graph(domain).subgraph(members)
    component_of = {}
    for cid, component in enumerate(nx.connected_components(subgraph)):
        for k in component:
            component_of[k] = cid
    return component_of


def bfs_spath_oracle(u, v, s_set, domain=None) -> Optional[SPath]:
    """Shortest S-path from u to v by breadth-first search, or None if unreachable."""
    s_set = frozenset(s_set)
    if domain is None:
        domain = enumerate_np(DomainSpec(u.n, len(u.alternatives)))
    if u.restriction_key(s_set) != v.restriction_key(s_set):
        raise PreconditionError("endpoints disagree on S")
    source, target = domain.position(u), domain.position(v)
    key = u.restriction_key(s_set)
    members = [k for k, w in enumerate(domain) if w.restriction_key(s_set) == key]
    try:
        nodes = nx.shortest_path(variant_graph(domain).subgraph(members), source, target)
    except nx.NetworkXNoPath:
        return None
    return SPath(s_set, tuple(domain[k] for k in nodes))
