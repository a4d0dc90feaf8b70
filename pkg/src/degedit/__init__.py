"""Edge editing to connected graphs with prescribed degrees."""
