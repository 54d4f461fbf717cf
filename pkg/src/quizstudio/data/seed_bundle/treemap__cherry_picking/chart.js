const rows = data.filter(d => +d.Value > d3.mean(data, e => +e.Value) * 0.5);
const root = d3.hierarchy({children: rows.map(d => ({name: d.Category, value: +d.Value}))})
  .sum(d => d.value);
d3.treemap().size([width, height]).padding(2)(root);
const color = d3.scaleOrdinal(d3.schemeTableau10);
svg.selectAll("rect.cell").data(root.leaves()).join("rect")
  .attr("class", "cell")
  .attr("x", d => d.x0)
  .attr("y", d => d.y0)
  .attr("width", d => d.x1 - d.x0)
  .attr("height", d => d.y1 - d.y0)
  .attr("fill", d => color(d.data.name));
