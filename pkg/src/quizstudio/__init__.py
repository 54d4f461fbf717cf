"""Chart-based MCQ authoring studio with simulated student cohorts."""

__version__ = "0.1.0"
