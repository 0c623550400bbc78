import hypothesis

# One deterministic profile for the whole suite: reproducible failures, no
# wall-clock deadline flakiness on slow exact arithmetic.
hypothesis.settings.register_profile(
    "grouptrees",
    derandomize=True,
    deadline=None,
    max_examples=60,
)
hypothesis.settings.load_profile("grouptrees")
