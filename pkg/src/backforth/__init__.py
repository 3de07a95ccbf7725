"""Self-similar k-edge-connected digraphs and finite checks of their structure."""
