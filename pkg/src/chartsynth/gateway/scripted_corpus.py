"""Script builders backing the scripted synthesizer backend.

Every builder returns a complete, executable matplotlib script with explicit
data. Scripts carry marker comments consumed elsewhere in the pipeline:

* ``#TYPE:<minor>`` / ``#TOPIC:<topic>`` let later personas recover context;
* ``#AXES:<n>`` mirrors the true axes count so the stub renderer and the
  real harness agree;
* ``#GROUPS:<n>`` records the number of data groups as ground truth for
  counting questions.

Data values are derived from a small integer ``variant`` so different steps
yield different charts while staying fully deterministic.
"""

from __future__ import annotations

_CATEGORY_POOL = (
    "Alpha", "Beacon", "Cedar", "Delta", "Ember", "Falcon", "Garnet", "Harbor",
    "Indigo", "Juniper", "Krypton", "Lumen",
)

_SERIES_POOL = (
    "North", "South", "East", "West", "Central", "Coastal", "Inland", "Highland",
)

_PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")


def _values(variant: int, n: int, base: int = 8, spread: int = 13) -> list[int]:
    return [base + ((variant * 7 + i * 5) % spread) + 2 * ((variant + i) % 4) for i in range(n)]


def _names(pool, variant: int, n: int) -> list[str]:
    return [pool[(variant + i) % len(pool)] for i in range(n)]


def _header(minor: str, topic: str, axes: int, groups: int) -> str:
    return f"#TYPE:{minor}\n#TOPIC:{topic}\n#AXES:{axes}\n#GROUPS:{groups}\n"


def _title(topic: str, flavor: str) -> str:
    return f"{topic}: {flavor}"


def _line(minor: str, topic: str, variant: int) -> str:
    series = 2 + variant % 2
    names = _names(_SERIES_POOL, variant, series)
    points = 6
    lines = []
    for s in range(series):
        lines.append(f"ax.plot(x, {_values(variant + s, points)}, marker='o', label='{names[s]}')")
    extra = ""
    if "annotation" in minor:
        ys = _values(variant, points)
        peak = max(range(points), key=lambda i: ys[i])
        extra = (
            f"ax.annotate('peak {ys[peak]}', xy=({peak}, {ys[peak]}),"
            " xytext=(0.5, 0.9), textcoords='axes fraction',"
            " arrowprops=dict(arrowstyle='->'))\n"
        )
    if "error bar" in minor:
        lines = [
            f"ax.errorbar(x, {_values(variant + s, points)}, yerr={[1 + (variant + i + s) % 3 for i in range(points)]},"
            f" marker='o', capsize=3, label='{names[s]}')"
            for s in range(series)
        ]
    plotted = "\n".join(lines)
    return (
        _header(minor, topic, 1, series)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"x = np.arange({points})\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + plotted + "\n"
        + extra
        + f"ax.set_title('{_title(topic, 'Quarterly Trend Review')}')\n"
        + "ax.set_xlabel('Period')\n"
        + "ax.set_ylabel('Index value')\n"
        + "ax.legend()\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _pie(minor: str, topic: str, variant: int) -> str:
    n = 4 + variant % 2
    values = _values(variant, n, base=12)
    labels = _names(_CATEGORY_POOL, variant, n)
    wedge = ""
    if "donut" in minor or "ring" in minor:
        width = 0.35 if "donut" in minor else 0.25
        wedge = f", wedgeprops=dict(width={width}, edgecolor='white')"
    explode = ""
    if "sector" in minor:
        parts = [0.0] * n
        parts[variant % n] = 0.12
        explode = f", explode={parts}"
    return (
        _header(minor, topic, 1, n)
        + "import matplotlib.pyplot as plt\n\n"
        + f"values = {values}\n"
        + f"labels = {labels}\n"
        + "fig, ax = plt.subplots(figsize=(6.5, 6.5))\n"
        + f"ax.pie(values, labels=labels, autopct='%1.0f%%'{wedge}{explode})\n"
        + f"ax.set_title('{_title(topic, 'Share of Activity')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _bar(minor: str, topic: str, variant: int) -> str:
    n = 5
    labels = _names(_CATEGORY_POOL, variant, n)
    a = _values(variant, n, base=10)
    b = _values(variant + 3, n, base=6)
    header = _header(minor, topic, 1, 2 if ("stacked" in minor or "percentage" in minor) else 1)
    body = [
        "import numpy as np",
        "import matplotlib.pyplot as plt",
        "",
        f"labels = {labels}",
        f"primary = np.array({a}, dtype=float)",
        f"secondary = np.array({b}, dtype=float)",
        "fig, ax = plt.subplots(figsize=(8, 5))",
    ]
    if "horizontal" in minor:
        body += ["bars = ax.barh(labels, primary, color='#4c72b0')", "ax.set_xlabel('Total units')"]
    elif "stacked" in minor:
        body += [
            "ax.bar(labels, primary, label='Phase one', color='#4c72b0')",
            "ax.bar(labels, secondary, bottom=primary, label='Phase two', color='#dd8452')",
            "ax.set_ylabel('Total units')",
            "ax.legend()",
        ]
    elif "percentage" in minor:
        body += [
            "total = primary + secondary",
            "share_a = 100.0 * primary / total",
            "share_b = 100.0 * secondary / total",
            "ax.bar(labels, share_a, label='Phase one', color='#4c72b0')",
            "ax.bar(labels, share_b, bottom=share_a, label='Phase two', color='#dd8452')",
            "ax.set_ylabel('Share (%)')",
            "ax.legend()",
        ]
    else:
        body += ["bars = ax.bar(labels, primary, color='#55a868')", "ax.set_ylabel('Total units')"]
        if "annotation" in minor:
            body.append("ax.bar_label(bars, fmt='%.0f')")
    body += [
        f"ax.set_title('{_title(topic, 'Category Comparison')}')",
        "plt.tight_layout()",
        "plt.show()",
    ]
    return header + "\n".join(body) + "\n"


def _bar3d(minor: str, topic: str, variant: int) -> str:
    dz = _values(variant, 12, base=4)
    second = _values(variant + 5, 12, base=3)
    layers = ""
    if "stacked" in minor or "percentage" in minor:
        layers = (
            "dz2 = np.array(" + str(second) + ", dtype=float)\n"
            "ax.bar3d(xpos, ypos, dz, 0.6, 0.6, dz2, color='#dd8452', shade=True)\n"
        )
    return (
        _header(minor, topic, 1, 2 if layers else 1)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + "fig = plt.figure(figsize=(8, 6))\n"
        + "ax = fig.add_subplot(projection='3d')\n"
        + "xpos, ypos = np.meshgrid(np.arange(4), np.arange(3), indexing='ij')\n"
        + "xpos = xpos.ravel().astype(float)\n"
        + "ypos = ypos.ravel().astype(float)\n"
        + f"dz = np.array({dz}, dtype=float)\n"
        + "ax.bar3d(xpos, ypos, np.zeros(12), 0.6, 0.6, dz, color='#4c72b0', shade=True)\n"
        + layers
        + f"ax.set_title('{_title(topic, 'Grid Volume Overview')}')\n"
        + "ax.set_xlabel('Row')\n"
        + "ax.set_ylabel('Column')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _node(minor: str, topic: str, variant: int) -> str:
    arrow = "'->'" if "directed" in minor else "'-'"
    names = _names(_CATEGORY_POOL, variant, 5)
    return (
        _header(minor, topic, 1, 5)
        + "import matplotlib.pyplot as plt\n\n"
        + f"nodes = {names}\n"
        + "pos = [(0.0, 0.0), (2.0, 1.2), (4.0, 0.2), (1.2, -1.4), (3.2, -1.2)]\n"
        + "edges = [(0, 1), (1, 2), (0, 3), (3, 4), (4, 2), (1, 4)]\n"
        + "fig, ax = plt.subplots(figsize=(7, 5))\n"
        + "for a, b in edges:\n"
        + "    ax.annotate('', xy=pos[b], xytext=pos[a],\n"
        + f"                arrowprops=dict(arrowstyle={arrow}, color='gray'))\n"
        + "for name, (x, y) in zip(nodes, pos):\n"
        + "    ax.scatter([x], [y], s=900, color='#457b9d', zorder=3)\n"
        + "    ax.text(x, y, name, ha='center', va='center', color='white', fontsize=8)\n"
        + "ax.set_xlim(-1, 5)\n"
        + "ax.set_ylim(-2.2, 2.0)\n"
        + f"ax.set_title('{_title(topic, 'Connection Map')}')\n"
        + "ax.axis('off')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _radar(minor: str, topic: str, variant: int) -> str:
    n = 5
    values = _values(variant, n, base=3, spread=7)
    labels = _names(_CATEGORY_POOL, variant, n)
    fill = "ax.fill(angles_c, values_c, alpha=0.25, color='#4c72b0')\n" if "area" in minor else ""
    return (
        _header(minor, topic, 1, n)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"labels = {labels}\n"
        + f"values = {values}\n"
        + "angles = np.linspace(0, 2 * np.pi, len(labels), endpoint=False).tolist()\n"
        + "values_c = values + values[:1]\n"
        + "angles_c = angles + angles[:1]\n"
        + "fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={'projection': 'polar'})\n"
        + "ax.plot(angles_c, values_c, 'o-', color='#4c72b0')\n"
        + fill
        + "ax.set_xticks(angles)\n"
        + "ax.set_xticklabels(labels)\n"
        + f"ax.set_title('{_title(topic, 'Capability Profile')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _area(minor: str, topic: str, variant: int) -> str:
    points = 7
    a = _values(variant, points)
    b = _values(variant + 2, points, base=5)
    if "stacked" in minor:
        plot = (
            f"ax.stackplot(x, {a}, {b}, labels=['Stream one', 'Stream two'],"
            " colors=['#4c72b0', '#dd8452'], alpha=0.85)\nax.legend(loc='upper left')\n"
        )
        groups = 2
    else:
        plot = f"ax.fill_between(x, {a}, color='#4c72b0', alpha=0.6)\n"
        groups = 1
    return (
        _header(minor, topic, 1, groups)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"x = np.arange({points})\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + plot
        + f"ax.set_title('{_title(topic, 'Cumulative Flow')}')\n"
        + "ax.set_xlabel('Interval')\n"
        + "ax.set_ylabel('Volume')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _box(minor: str, topic: str, variant: int) -> str:
    groups = 3
    data = [_values(variant + g, 9, base=5, spread=17) for g in range(groups)]
    orientation = "False" if "horizontal" in minor else "True"
    return (
        _header(minor, topic, 1, groups)
        + "import matplotlib.pyplot as plt\n\n"
        + f"data = {data}\n"
        + f"labels = {_names(_SERIES_POOL, variant, groups)}\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + f"ax.boxplot(data, vert={orientation}, tick_labels=labels)\n"
        + f"ax.set_title('{_title(topic, 'Distribution Summary')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _scatter(minor: str, topic: str, variant: int) -> str:
    n = 12
    xs = _values(variant, n, base=2, spread=19)
    ys = _values(variant + 4, n, base=3, spread=17)
    sizes = [40 + 22 * ((variant + i) % 5) for i in range(n)]
    extra = ""
    marker = "ax.scatter(x, y, color='#4c72b0', alpha=0.8)\n"
    if "bubble" in minor:
        marker = f"ax.scatter(x, y, s={sizes}, color='#55a868', alpha=0.55, edgecolor='k')\n"
    if "smooth" in minor:
        extra = (
            "coeffs = np.polyfit(x, y, 2)\n"
            "grid = np.linspace(min(x), max(x), 100)\n"
            "ax.plot(grid, np.polyval(coeffs, grid), color='#c44e52', label='fit')\n"
            "ax.legend()\n"
        )
    return (
        _header(minor, topic, 1, 1)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"x = np.array({xs}, dtype=float)\n"
        + f"y = np.array({ys}, dtype=float)\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + marker
        + extra
        + f"ax.set_title('{_title(topic, 'Observation Spread')}')\n"
        + "ax.set_xlabel('Measure A')\n"
        + "ax.set_ylabel('Measure B')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _heat_map(minor: str, topic: str, variant: int) -> str:
    rows = [[(variant * 3 + r * 5 + c * 7) % 23 for c in range(5)] for r in range(4)]
    return (
        _header(minor, topic, 1, 4)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"grid = np.array({rows}, dtype=float)\n"
        + "fig, ax = plt.subplots(figsize=(7, 5))\n"
        + "ax.imshow(grid, cmap='viridis')\n"
        + f"ax.set_xticks(range(5), {_names(_CATEGORY_POOL, variant, 5)}, rotation=30)\n"
        + f"ax.set_yticks(range(4), {_names(_SERIES_POOL, variant, 4)})\n"
        + f"ax.set_title('{_title(topic, 'Intensity Matrix')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _rose(minor: str, topic: str, variant: int) -> str:
    n = 8
    values = _values(variant, n, base=4)
    return (
        _header(minor, topic, 1, n)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"values = {values}\n"
        + "angles = np.linspace(0.0, 2 * np.pi, len(values), endpoint=False)\n"
        + "fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={'projection': 'polar'})\n"
        + "ax.bar(angles, values, width=2 * np.pi / len(values) * 0.9,\n"
        + "       color=plt.cm.viridis(np.linspace(0.1, 0.9, len(values))), alpha=0.85)\n"
        + f"ax.set_title('{_title(topic, 'Directional Totals')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _funnel(minor: str, topic: str, variant: int) -> str:
    n = 5
    raw = sorted(_values(variant, n, base=20, spread=31), reverse=True)
    labels = _names(_CATEGORY_POOL, variant, n)
    return (
        _header(minor, topic, 1, n)
        + "import matplotlib.pyplot as plt\n\n"
        + f"values = {raw}\n"
        + f"stages = {labels}\n"
        + "left = [(values[0] - v) / 2 for v in values]\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + "ax.barh(range(len(values)), values, left=left, color='#4c72b0', alpha=0.85)\n"
        + "ax.set_yticks(range(len(values)), stages)\n"
        + "ax.invert_yaxis()\n"
        + "ax.set_xticks([])\n"
        + f"ax.set_title('{_title(topic, 'Stage Conversion')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _waterfall(minor: str, topic: str, variant: int) -> str:
    n = 6
    swings = [v - 11 for v in _values(variant, n, base=3, spread=23)]
    labels = _names(_CATEGORY_POOL, variant, n)
    return (
        _header(minor, topic, 1, n)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"changes = {swings}\n"
        + f"labels = {labels}\n"
        + "starts = np.concatenate([[0.0], np.cumsum(changes)[:-1]])\n"
        + "colors = ['#2a9d8f' if c >= 0 else '#e76f51' for c in changes]\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + "ax.bar(labels, changes, bottom=starts, color=colors)\n"
        + "ax.axhline(0, color='gray', linewidth=0.8)\n"
        + f"ax.set_title('{_title(topic, 'Net Change Breakdown')}')\n"
        + "ax.set_ylabel('Delta')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _histogram(minor: str, topic: str, variant: int) -> str:
    samples = [((variant * 11 + i * 7) % 29) + 0.5 * ((variant + i) % 3) for i in range(40)]
    return (
        _header(minor, topic, 1, 1)
        + "import matplotlib.pyplot as plt\n\n"
        + f"samples = {samples}\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + "ax.hist(samples, bins=8, color='#4c72b0', edgecolor='white')\n"
        + f"ax.set_title('{_title(topic, 'Frequency Profile')}')\n"
        + "ax.set_xlabel('Value bucket')\n"
        + "ax.set_ylabel('Count')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


def _tree_map(minor: str, topic: str, variant: int) -> str:
    n = 5
    values = _values(variant, n, base=10)
    labels = _names(_CATEGORY_POOL, variant, n)
    return (
        _header(minor, topic, 1, n)
        + "import matplotlib.pyplot as plt\n\n"
        + f"sizes = {values}\n"
        + f"labels = {labels}\n"
        + f"colors = {list(_PALETTE[:n])}\n"
        + "total = float(sum(sizes))\n"
        + "fig, ax = plt.subplots(figsize=(8, 5))\n"
        + "x = 0.0\n"
        + "for size, label, color in zip(sizes, labels, colors):\n"
        + "    w = size / total\n"
        + "    ax.add_patch(plt.Rectangle((x, 0.0), w, 1.0, facecolor=color, edgecolor='white'))\n"
        + "    ax.text(x + w / 2, 0.5, label, ha='center', va='center', fontsize=9, rotation=90)\n"
        + "    x += w\n"
        + "ax.set_xlim(0, 1)\n"
        + "ax.set_ylim(0, 1)\n"
        + "ax.axis('off')\n"
        + f"ax.set_title('{_title(topic, 'Proportional Footprint')}')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )


_FAMILY_BUILDERS = (
    ("line", _line),
    ("pie", _pie),
    ("ring", _pie),
    ("3d bar", _bar3d),
    ("bar", _bar),
    ("node", _node),
    ("radar", _radar),
    ("area", _area),
    ("box", _box),
    ("scatter", _scatter),
    ("bubble", _scatter),
    ("heat", _heat_map),
    ("rose", _rose),
    ("funnel", _funnel),
    ("waterfall", _waterfall),
    ("histogram", _histogram),
    ("tree", _tree_map),
)


def build_script(minor: str, topic: str, variant: int) -> str:
    """Executable script for the requested minor chart type."""
    lowered = minor.lower()
    for needle, builder in _FAMILY_BUILDERS:
        if needle in lowered:
            return builder(lowered, topic, variant)
    return _bar("bar chart", topic, variant)


def build_evolved_script(minor: str, topic: str, direction_id: int, variant: int) -> str:
    """Evolved script honoring the requested complexity direction.

    Directions 3 (overlay) and 4 (extra subplot) both genuinely produce two
    axes objects, so the ``#AXES:2`` marker matches real execution.
    """
    if direction_id == 3:
        n = 6
        bars = _values(variant, n, base=12)
        line = _values(variant + 3, n, base=30, spread=21)
        return (
            _header(minor, topic, 2, 2)
            + "import numpy as np\n"
            + "import matplotlib.pyplot as plt\n\n"
            + f"labels = {_names(_CATEGORY_POOL, variant, n)}\n"
            + f"volumes = {bars}\n"
            + f"rates = {line}\n"
            + "fig, ax = plt.subplots(figsize=(9, 5))\n"
            + "ax.bar(labels, volumes, color='#4c72b0', label='Volume')\n"
            + "twin = ax.twinx()\n"
            + "twin.plot(labels, rates, color='#c44e52', marker='o', label='Rate')\n"
            + "ax.set_ylabel('Volume')\n"
            + "twin.set_ylabel('Rate')\n"
            + f"ax.set_title('{_title(topic, 'Volume with Rate Overlay')}')\n"
            + "fig.legend(loc='upper left', bbox_to_anchor=(0.12, 0.92))\n"
            + "plt.tight_layout()\n"
            + "plt.show()\n"
        )
    if direction_id == 4:
        n = 5
        bars = _values(variant, n, base=9)
        line = _values(variant + 2, n, base=14)
        return (
            _header(minor, topic, 2, 2)
            + "import numpy as np\n"
            + "import matplotlib.pyplot as plt\n\n"
            + f"labels = {_names(_CATEGORY_POOL, variant, n)}\n"
            + f"totals = {bars}\n"
            + f"trend = {line}\n"
            + "fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))\n"
            + "ax1.bar(labels, totals, color='#55a868')\n"
            + "ax1.set_title('Totals by segment')\n"
            + "ax1.set_ylabel('Units')\n"
            + "ax2.plot(np.arange(len(trend)), trend, marker='s', color='#8172b3')\n"
            + "ax2.set_title('Trend over time')\n"
            + "ax2.set_xlabel('Period')\n"
            + f"fig.suptitle('{_title(topic, 'Paired Views')}')\n"
            + "plt.tight_layout()\n"
            + "plt.show()\n"
        )
    # Directions 1 and 2 stay single-axes: more data or richer styling.
    series = 4 if direction_id == 1 else 3
    points = 9 if direction_id == 1 else 7
    names = _names(_SERIES_POOL, variant, series)
    plotted = "\n".join(
        f"ax.plot(x, {_values(variant + s, points)}, marker='o', label='{names[s]}')"
        for s in range(series)
    )
    styling = "ax.grid(True, linestyle='--', alpha=0.5)\n"
    if direction_id == 2:
        styling += "ax.set_facecolor('#f7f7f4')\nax.legend(frameon=True, shadow=True)\n"
    else:
        styling += "ax.legend()\n"
    return (
        _header(minor, topic, 1, series)
        + "import numpy as np\n"
        + "import matplotlib.pyplot as plt\n\n"
        + f"x = np.arange({points})\n"
        + "fig, ax = plt.subplots(figsize=(9, 5))\n"
        + plotted + "\n"
        + styling
        + f"ax.set_title('{_title(topic, 'Expanded Series View')}')\n"
        + "ax.set_xlabel('Period')\n"
        + "ax.set_ylabel('Index value')\n"
        + "plt.tight_layout()\n"
        + "plt.show()\n"
    )
