"""Test fixtures for ackermann-rs."""
