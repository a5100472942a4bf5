"""Linear determinantal representations of smooth plane curves over Q."""
