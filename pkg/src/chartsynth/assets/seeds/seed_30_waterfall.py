# chart-type: waterfall chart
import numpy as np
import matplotlib.pyplot as plt

labels = ["Opening", "Grants", "Tuition", "Payroll", "Facilities", "Closing"]
changes = [250, 120, 180, -260, -90, 0]
changes[-1] = -sum(changes[:-1]) + 200  # force a visible closing balance step

starts = np.concatenate([[0.0], np.cumsum(changes)[:-1]])
colors = ["#2a9d8f" if c >= 0 else "#e76f51" for c in changes]

fig, ax = plt.subplots(figsize=(8, 5))
ax.bar(labels, changes, bottom=starts, color=colors, width=0.65)
ax.axhline(0, color="gray", lw=0.8)
ax.set_title("Department Budget Flow (k$)")
ax.set_ylabel("Balance change")
plt.xticks(rotation=20)
plt.tight_layout()
plt.show()
