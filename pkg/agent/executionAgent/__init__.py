from .ExecutionAgent import ExecutionAgent

__all__ = ["ExecutionAgent"]

