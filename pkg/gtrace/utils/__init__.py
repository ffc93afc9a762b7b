"""Text formats and report rendering."""
