"""
Translation gateway.

Backends (recorded replay, REST, compositional mock) behind a single
gateway that serves repeated requests from a persistent replay cache.
"""
