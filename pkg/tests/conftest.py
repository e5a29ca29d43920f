"""Suite-wide hypothesis settings: modest example counts, no deadline.

The continuous integration box this runs on has a single slow core, so
per-example deadlines would only add flakiness.
"""

from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")
