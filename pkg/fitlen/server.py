"""MCP server exposing the toolkit commands as tools."""

import logging
from typing import Any

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from .report import format_document
from .tools import (
    compute_fitting,
    compute_hall,
    compute_max_hall,
    list_covers,
    reproduce_example,
    resolve_group,
    run_check,
    run_conjecture,
    summarize_group,
)
from .tools.build_group import format_summary
from .tools.conjecture import format_conjecture
from .tools.invariants import format_invariant
from .tools.list_covers import format_covers
from .tools.reproduce_example import list_examples

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Initialize server
app = Server("fitlen-mcp-server")

GROUP_PROPERTY = {
    "type": "string",
    "description": "Group expression such as 'W(C(2,1),IT(W(C(3,1),C(5,1)),1))' or a generator list such as '<(1 2),(1 2 3)>'",
}
ACTION_PROPERTY = {
    "type": "string",
    "enum": ["natural", "regular"],
    "description": "Wreath action for iterated powers (default: configured, normally 'natural')",
}


def _text(output: str) -> list[TextContent]:
    return [TextContent(type="text", text=output)]


@app.list_tools()  # type: ignore[no-untyped-call, untyped-decorator]
async def list_tools() -> list[Tool]:
    """List available tools."""
    return [
        Tool(
            name="build_group",
            description="Build a group from an expression or generator list. Returns degree, exact order, prime divisors and the Sylow-system verification.",
            inputSchema={
                "type": "object",
                "properties": {"group": GROUP_PROPERTY, "action": ACTION_PROPERTY},
                "required": ["group"],
            },
        ),
        Tool(
            name="fitting_length",
            description="Compute the Fitting length h(G) via the lower nilpotent series, optionally with the derived length.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "action": ACTION_PROPERTY,
                    "derived": {"type": "boolean", "default": False},
                },
                "required": ["group"],
            },
        ),
        Tool(
            name="hall_fitting_length",
            description="Compute h(G_sigma) for the Hall subgroup generated by the Sylow members for the primes in sigma. Needs an expression-built group.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "sigma": {"type": "string", "description": "Prime set, e.g. '{2,3}'"},
                    "action": ACTION_PROPERTY,
                },
                "required": ["group", "sigma"],
            },
        ),
        Tool(
            name="max_hall_length",
            description="Largest Hall Fitting length over all prime subsets of the given size.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "size": {"type": "integer", "minimum": 0},
                    "action": ACTION_PROPERTY,
                },
                "required": ["group", "size"],
            },
        ),
        Tool(
            name="list_covers",
            description="Enumerate covers of a prime set (sets of at least three subsets with pairwise unions equal to the whole set). With a group, each cover is weighted by the Hall profile and its bound (Theta-2)/(t-2) is shown.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "ground": {"type": "string", "description": "Prime set, e.g. '{2,3,5}'"},
                    "t_max": {"type": "integer", "minimum": 3},
                    "cover": {"type": "string", "description": "Single cover, e.g. '{2,3};{3,5};{2,5}'"},
                },
            },
        ),
        Tool(
            name="check_bounds",
            description="Measure the Hall profile of a group and evaluate every applicable Fitting-length bound. Reports PASS, VIOLATION or N/A per bound.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "action": ACTION_PROPERTY,
                    "t_max": {"type": "integer", "minimum": 3},
                    "sweep": {"type": "boolean", "default": False},
                },
                "required": ["group"],
            },
        ),
        Tool(
            name="reproduce_example",
            description="Reproduce a catalogued example family at iteration count ell. Small cases are built and measured; larger ones are checked on the printed formulas. Omit example_id to list the catalog.",
            inputSchema={
                "type": "object",
                "properties": {
                    "example_id": {"type": "string", "description": "Catalog id, e.g. 'wreath-over-pair'"},
                    "ell": {"type": "integer", "minimum": 1, "default": 1},
                    "action": ACTION_PROPERTY,
                    "extended": {"type": "boolean", "default": False},
                },
            },
        ),
        Tool(
            name="factorization_harness",
            description="Run the trifactorization or permutable-nilpotent harness on a small group with three subgroups given as generator lists. Outcomes are data, not verdicts.",
            inputSchema={
                "type": "object",
                "properties": {
                    "group": GROUP_PROPERTY,
                    "subgroups": {
                        "type": "array",
                        "items": {"type": "string"},
                        "minItems": 3,
                        "maxItems": 3,
                    },
                    "kind": {
                        "type": "string",
                        "enum": ["trifactorized", "permutable-nilpotent"],
                        "default": "trifactorized",
                    },
                },
                "required": ["group", "subgroups"],
            },
        ),
    ]


@app.call_tool()  # type: ignore[untyped-decorator]
async def call_tool(name: str, arguments: Any) -> list[TextContent]:
    """Handle tool calls."""
    try:
        args = arguments or {}
        if name == "build_group":
            return await handle_build_group(args)
        elif name == "fitting_length":
            return await handle_fitting_length(args)
        elif name == "hall_fitting_length":
            return await handle_hall_fitting_length(args)
        elif name == "max_hall_length":
            return await handle_max_hall_length(args)
        elif name == "list_covers":
            return await handle_list_covers(args)
        elif name == "check_bounds":
            return await handle_check_bounds(args)
        elif name == "reproduce_example":
            return await handle_reproduce_example(args)
        elif name == "factorization_harness":
            return await handle_factorization_harness(args)
        else:
            return _text(f"Unknown tool: {name}")

    except Exception as e:
        logger.error(f"Error handling tool call {name}: {e}", exc_info=True)
        return _text(f"Error: {str(e)}")


async def handle_build_group(args: dict[str, Any]) -> list[TextContent]:
    """Handle build_group tool call."""
    group = resolve_group(args["group"], action=args.get("action"), verify=False)
    return _text(format_summary(summarize_group(group)))


async def handle_fitting_length(args: dict[str, Any]) -> list[TextContent]:
    """Handle fitting_length tool call."""
    group = resolve_group(args["group"], action=args.get("action"))
    return _text(format_invariant(compute_fitting(group, with_derived=args.get("derived", False))))


async def handle_hall_fitting_length(args: dict[str, Any]) -> list[TextContent]:
    """Handle hall_fitting_length tool call."""
    group = resolve_group(args["group"], action=args.get("action"))
    return _text(format_invariant(compute_hall(group, args["sigma"])))


async def handle_max_hall_length(args: dict[str, Any]) -> list[TextContent]:
    """Handle max_hall_length tool call."""
    group = resolve_group(args["group"], action=args.get("action"))
    return _text(format_invariant(compute_max_hall(group, args.get("size"))))


async def handle_list_covers(args: dict[str, Any]) -> list[TextContent]:
    """Handle list_covers tool call."""
    group_text = args.get("group")
    ground = args.get("ground")
    if not group_text and not ground:
        return _text("Error: either group or ground is required")
    group = resolve_group(group_text) if group_text else None
    listing = list_covers(ground=ground, group=group, t_max=args.get("t_max"), cover_text=args.get("cover"))
    return _text(format_covers(listing))


async def handle_check_bounds(args: dict[str, Any]) -> list[TextContent]:
    """Handle check_bounds tool call."""
    group = resolve_group(args["group"], action=args.get("action"))
    doc = run_check(group, t_max=args.get("t_max"), sweep=args.get("sweep", False))
    return _text(format_document(doc))


async def handle_reproduce_example(args: dict[str, Any]) -> list[TextContent]:
    """Handle reproduce_example tool call."""
    example_id = args.get("example_id")
    if not example_id:
        return _text(list_examples())
    doc = reproduce_example(
        example_id,
        args.get("ell", 1),
        action=args.get("action"),
        extended=args.get("extended"),
    )
    return _text(format_document(doc))


async def handle_factorization_harness(args: dict[str, Any]) -> list[TextContent]:
    """Handle factorization_harness tool call."""
    group = resolve_group(args["group"])
    report = run_conjecture(group, list(args.get("subgroups", [])), kind=args.get("kind", "trifactorized"))
    return _text(format_conjecture(report))


async def async_main() -> None:
    """Run the MCP server (async)."""
    logger.info("Starting fitlen MCP server")
    async with stdio_server() as (read_stream, write_stream):
        await app.run(read_stream, write_stream, app.create_initialization_options())


def main() -> None:
    """Entry point for the MCP server (sync wrapper)."""
    import asyncio
    asyncio.run(async_main())


if __name__ == "__main__":
    main()
