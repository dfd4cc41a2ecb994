"""Test suite for the coring workbench."""
