"""HTTP service wrapping the core geometry package."""
