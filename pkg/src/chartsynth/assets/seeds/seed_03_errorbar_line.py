# chart-type: line chart with error bar
import numpy as np
import matplotlib.pyplot as plt

doses = np.array([5, 10, 20, 40, 80])
response = np.array([12.0, 19.5, 31.0, 38.5, 42.0])
spread = np.array([1.8, 2.2, 3.1, 2.7, 2.0])

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.errorbar(doses, response, yerr=spread, marker="o", capsize=4,
            color="#6a4c93", ecolor="#b5838d")
ax.set_xscale("log")
ax.set_title("Assay Response with Measurement Spread")
ax.set_xlabel("Dose (mg)")
ax.set_ylabel("Response index")
plt.tight_layout()
plt.show()
