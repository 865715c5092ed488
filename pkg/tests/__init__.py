"""Tests for ackermann-rs."""
