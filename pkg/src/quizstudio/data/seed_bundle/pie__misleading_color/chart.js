const radius = Math.min(width, height) / 2 - 20;
const g = svg.append("g").attr("transform", `translate(${width / 2},${height / 2})`);
const color = d3.scaleOrdinal().domain(data.map(d => d.Category)).range(["#d3d3d3", "#d62728", "#d3d3d3", "#d3d3d3", "#d3d3d3", "#d3d3d3"]);
const arcs = d3.pie().value(d => +d.Value)(data);
g.selectAll("path.slice").data(arcs).join("path")
  .attr("class", "slice")
  .attr("d", d3.arc().innerRadius(0).outerRadius(radius))
  .attr("fill", d => color(d.data.Category))
  .attr("stroke", "#ffffff");
