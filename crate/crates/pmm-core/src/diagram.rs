//! Schematic SVG rendering (placeholder).
