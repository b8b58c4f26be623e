# chart-type: scatter chart
import matplotlib.pyplot as plt

study_hours = [2, 3, 3.5, 4, 5, 5.5, 6, 7, 7.5, 8, 9, 10]
exam_scores = [55, 58, 62, 64, 66, 71, 70, 76, 80, 79, 85, 88]

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.scatter(study_hours, exam_scores, color="#4c72b0", s=60, alpha=0.85)
ax.set_title("Study Time vs Exam Score")
ax.set_xlabel("Hours per week")
ax.set_ylabel("Score")
ax.grid(alpha=0.3)
plt.tight_layout()
plt.show()
