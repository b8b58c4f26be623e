# chart-type: vertical box chart
import matplotlib.pyplot as plt

lab_a = [12, 14, 15, 15, 16, 18, 19, 21, 22, 24]
lab_b = [9, 11, 13, 14, 14, 15, 17, 18, 20, 28]
lab_c = [15, 17, 18, 19, 20, 20, 22, 23, 25, 26]

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.boxplot([lab_a, lab_b, lab_c], tick_labels=["Lab A", "Lab B", "Lab C"])
ax.set_title("Reaction Time Spread by Lab (ms)")
ax.set_ylabel("Milliseconds")
plt.tight_layout()
plt.show()
