import hypothesis

# Deterministic, CI-friendly hypothesis runs: numeric tolerances in these
# tests are calibrated, not statistical, so derandomization loses nothing.
hypothesis.settings.register_profile("mmgl", derandomize=True, deadline=None, max_examples=50)
hypothesis.settings.load_profile("mmgl")
