"""Transitive proxy voting toolkit.

Voters submit partial-order ballots together with a ranking over possible
proxies and a default linear ballot.  A proxy mechanism turns each ballot
into a set of permitted proxies, delegation resolves through the resulting
graph, and a resolute rule aggregates the ballots the gurus cast.  The
package provides exhaustive axiom checkers and manipulation searches over
small parameter ranges.
"""

__version__ = "0.1.0"
