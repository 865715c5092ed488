"""Integration tests for ackermann-rs."""
