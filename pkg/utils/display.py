import sys


class Display:
    """Terminal rendering for the human-readable (--format text) reports"""

    # Color codes for terminal output
    COLORS = {
        'reset': '\033[0m',
        'bold': '\033[1m',
        'red': '\033[91m',
        'green': '\033[92m',
        'yellow': '\033[93m',
        'blue': '\033[94m',
        'magenta': '\033[95m',
        'cyan': '\033[96m',
        'white': '\033[97m',
        'gray': '\033[90m'
    }

    # switched off for --no-color and when stdout is not a terminal
    enabled = sys.stdout.isatty()

    @staticmethod
    def set_color(enabled):
        """Turn ANSI colors on or off for every later call"""
        Display.enabled = bool(enabled)

    @staticmethod
    def color_text(text, color='reset', bold=False):
        """Apply color to text"""
        if not Display.enabled:
            return str(text)
        color_code = Display.COLORS.get(color, Display.COLORS['reset'])
        bold_code = Display.COLORS['bold'] if bold else ''
        reset = Display.COLORS['reset']
        return f"{bold_code}{color_code}{text}{reset}"

    @staticmethod
    def print_header(text, color='cyan', width=80):
        """Print a formatted header"""
        print("\n" + "=" * width)
        print(Display.color_text(text.center(width), color, bold=True))
        print("=" * width + "\n")

    @staticmethod
    def print_subheader(text, color='blue'):
        """Print a formatted subheader"""
        print("\n" + Display.color_text(f"--- {text} ---", color, bold=True) + "\n")

    @staticmethod
    def print_success(message):
        print(Display.color_text(f"✓ {message}", 'green', bold=True))

    @staticmethod
    def print_error(message):
        """Errors go to stderr so stdout stays machine-readable"""
        print(Display.color_text(f"✗ {message}", 'red', bold=True), file=sys.stderr)

    @staticmethod
    def print_warning(message):
        print(Display.color_text(f"⚠ {message}", 'yellow', bold=True), file=sys.stderr)

    @staticmethod
    def print_info(message):
        print(Display.color_text(f"ℹ {message}", 'blue'))

    @staticmethod
    def print_table(headers, rows, column_widths=None):
        """
        Print census-style rows; integer cells are right-aligned

        Args:
            headers: List of column headers
            rows: List of row data (list of lists)
            column_widths: Optional list of column widths
        """
        if not rows:
            Display.print_warning("No data to display")
            return

        widths = column_widths or [
            max(len(str(cell)) for cell in column) for column in zip(headers, *rows)
        ]

        def cell_text(cell, width):
            if isinstance(cell, int) and not isinstance(cell, bool):
                return str(cell).rjust(width)
            return str(cell).ljust(width)

        print("\n" + " | ".join(
            Display.color_text(str(h).ljust(w), 'cyan', bold=True) for h, w in zip(headers, widths)
        ))
        print("-+-".join("-" * w for w in widths))
        for row in rows:
            print(" | ".join(cell_text(cell, w) for cell, w in zip(row, widths)))
        print()

    @staticmethod
    def print_stats(title, stats):
        """
        Print statistics in a formatted way

        Args:
            title: Stats section title
            stats: Dictionary of stat_name: stat_value
        """
        Display.print_subheader(title)
        for key, value in stats.items():
            print(f"  {Display.color_text(str(key) + ':', 'cyan', bold=True)} {Display._format_value(value)}")
        print()

    @staticmethod
    def print_element(element, title="Element"):
        """
        Print a serialized module element

        Args:
            element: dict produced by utils.serialization.encode_element
            title: Section title
        """
        Display.print_subheader(title)
        print(f"  {Display.color_text('kind:', 'yellow')} {element.get('kind')}  "
              f"{Display.color_text('scalars:', 'yellow')} {element.get('scalars')}")
        print(f"  {Display.color_text('alpha:', 'yellow')} {element.get('alpha')}  "
              f"{Display.color_text('beta:', 'yellow')} {element.get('beta')}")
        for name in ('A', 'B'):
            jordan = element.get(name, {})
            off = jordan.get('off')
            line = f"diag={jordan.get('diag')}"
            if off is not None:
                line += f" off={off}"
            print(f"  {Display.color_text(name + ':', 'yellow')} {line}")
        print()

    @staticmethod
    def print_label(label):
        """Print an orbit label dict with its variant highlighted"""
        variant = label.get('variant', 'Unknown')
        fields = ", ".join(f"{k}={v}" for k, v in label.items() if k not in ('variant', 'representative'))
        print(f"  {Display._get_variant_text(variant)} {fields}")

    @staticmethod
    def print_word(word):
        """Print a witness word, one generator per line"""
        if not word:
            Display.print_info("Empty witness (identity)")
            return
        for i, gen in enumerate(word, 1):
            name = gen.get('gen', '?')
            rest = {k: v for k, v in gen.items() if k != 'gen'}
            print(f"  {Display.color_text(f'{i:>3}.', 'gray')} "
                  f"{Display.color_text(name, 'magenta', bold=True)} {rest if rest else ''}")

    @staticmethod
    def print_verdict(name, passed, detail=''):
        """One PASS/FAIL line for the self-test report"""
        text = Display.color_text('PASS', 'green', bold=True) if passed else Display.color_text('FAIL', 'red', bold=True)
        suffix = f"  {Display.color_text(detail, 'gray')}" if detail else ''
        print(f"  {text} {name}{suffix}")

    @staticmethod
    def _get_variant_text(variant):
        """Get colored orbit variant text"""
        variant_colors = {
            'Rank0': 'gray',
            'Rank1': 'blue',
            'Rank2': 'cyan',
            'Projective': 'green',
            'Unclassified': 'yellow',
        }
        return Display.color_text(variant.upper(), variant_colors.get(variant, 'white'), bold=True)

    @staticmethod
    def _format_value(value):
        if isinstance(value, bool):
            return Display.color_text('yes', 'green') if value else Display.color_text('no', 'red')
        return value


# Module-level aliases used by the feature modules
def print_info(message):
    """Print info message (module-level alias)"""
    Display.print_info(message)


def print_success(message):
    """Print success message (module-level alias)"""
    Display.print_success(message)


def print_warning(message):
    """Print warning message (module-level alias)"""
    Display.print_warning(message)


def print_table(headers, rows, column_widths=None):
    """Print data in table format (module-level alias)"""
    Display.print_table(headers, rows, column_widths)


def print_stats(title, stats):
    """Print statistics (module-level alias)"""
    Display.print_stats(title, stats)
