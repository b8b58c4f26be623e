# chart-type: stacked bar chart
import numpy as np
import matplotlib.pyplot as plt

quarters = ["Q1", "Q2", "Q3", "Q4"]
print_sales = np.array([120, 135, 128, 150])
ebook_sales = np.array([80, 95, 110, 125])
audio_sales = np.array([35, 42, 58, 70])

fig, ax = plt.subplots(figsize=(8, 5))
ax.bar(quarters, print_sales, label="Print", color="#4c72b0")
ax.bar(quarters, ebook_sales, bottom=print_sales, label="E-book", color="#dd8452")
ax.bar(quarters, audio_sales, bottom=print_sales + ebook_sales, label="Audio", color="#55a868")
ax.set_title("Publisher Sales by Format")
ax.set_ylabel("Thousand copies")
ax.legend()
plt.tight_layout()
plt.show()
