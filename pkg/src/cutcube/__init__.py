"""Cut sets to cube complexes on finite graph models."""
