"""Line and circle embedding certificates for graphs.

For a connected graph, :func:`embed_line` returns either a 1-D path
embedding or a well-signed matrix witness with one negative eigenvalue and
corank at least 2.  For a 2-connected graph, :func:`embed_plane` returns
either an outerplanar unit-circle embedding or such a witness with corank at
least 3.  Certificates serialize to JSON and re-verify independently.
"""

from ._core import (
    Certificate,
    Graph,
    certificate_from_json,
    embed_line,
    embed_plane,
    parse_edge_list,
    verify_certificate,
    write_edge_list,
)

__all__ = [
    "Certificate",
    "Graph",
    "certificate_from_json",
    "embed_line",
    "embed_plane",
    "parse_edge_list",
    "verify_certificate",
    "write_edge_list",
]
