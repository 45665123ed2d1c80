"""
Instruction Routing Operator (Logical Operator)

Selects the next planned instruction and determines if there are more to execute.
"""
from agent.shared.state import BenchState


def instruction_router_step(state: BenchState) -> BenchState:
    """
    LangGraph node function: select next instruction to execute

    :param state: Bench state
    :return: Updated state (contains current_instruction and current_index)
    """
    instructions = state.get("instructions") or []
    index = state.get("executed_count", 0)
    if index >= len(instructions):
        return state

    new_state = state.copy()
    new_state["current_instruction"] = instructions[index]
    new_state["current_index"] = index
    return new_state


def route_instruction_condition(state: BenchState) -> str:
    """
    Routing condition function: "continue" while instructions remain, else "done"
    """
    remaining = len(state.get("instructions") or []) - state.get("executed_count", 0)
    return "continue" if remaining > 0 else "done"
