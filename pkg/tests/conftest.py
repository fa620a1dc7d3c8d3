from hypothesis import settings

settings.register_profile("netop", max_examples=60, deadline=None)
settings.load_profile("netop")
