"""HTTP routes, one router per computational module."""
