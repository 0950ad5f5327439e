"""omega-pushdown: ω-pushdown automata, triple-pair grammars and Büchi lasso acceptance."""

__version__ = "0.1.0"
