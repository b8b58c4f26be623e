# chart-type: donut pie chart
import matplotlib.pyplot as plt

sources = ["Hydro", "Wind", "Solar", "Gas", "Other"]
megawatts = [410, 260, 190, 320, 95]

fig, ax = plt.subplots(figsize=(6.5, 6.5))
ax.pie(megawatts, labels=sources, autopct="%1.0f%%",
       wedgeprops=dict(width=0.38, edgecolor="white"), pctdistance=0.8)
ax.set_title("Regional Generation Capacity")
plt.tight_layout()
plt.show()
