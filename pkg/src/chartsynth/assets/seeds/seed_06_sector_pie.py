# chart-type: sector pie chart
import matplotlib.pyplot as plt

channels = ["Storefront", "Web", "Wholesale", "Pop-up"]
revenue = [44, 31, 18, 7]
explode = [0.08, 0, 0, 0]

fig, ax = plt.subplots(figsize=(6.5, 6.5))
ax.pie(revenue, labels=channels, explode=explode, shadow=True,
       autopct="%1.1f%%", startangle=140)
ax.set_title("Revenue by Sales Channel")
plt.tight_layout()
plt.show()
