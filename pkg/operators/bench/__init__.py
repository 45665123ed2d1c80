"""
Benchmark harness operators: sweep planning and routing, forward + backward
pipelines, and CSV record writing.
"""
