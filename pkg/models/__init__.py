"""Report and check-registry models shared by the algebra core and the CLI."""
