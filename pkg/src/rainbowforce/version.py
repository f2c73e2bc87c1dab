"""Version constants.

ENGINE_VERSION tags cached verdicts and search outputs; bump it whenever the
search semantics change so stale cache entries stop matching.
"""

PACKAGE_VERSION = "0.1.0"
ENGINE_VERSION = "1.0.0"
