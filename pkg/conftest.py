"""
Shared pytest configuration.
"""
import os

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))
