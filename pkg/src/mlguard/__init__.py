"""Static checking and guidance for supervised-learning pipeline programs."""
