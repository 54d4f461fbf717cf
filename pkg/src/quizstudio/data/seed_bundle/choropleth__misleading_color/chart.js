const cols = Math.ceil(Math.sqrt(data.length));
const tile = Math.min(width, height) / cols - 4;
const color = d3.scaleSequential(d3.interpolateReds).domain([d3.max(data, d => +d.Value) * 0.9, d3.max(data, d => +d.Value)]);
svg.selectAll("rect.region").data(data).join("rect")
  .attr("class", "region")
  .attr("x", (d, i) => (i % cols) * (tile + 4) + 10)
  .attr("y", (d, i) => Math.floor(i / cols) * (tile + 4) + 10)
  .attr("width", tile)
  .attr("height", tile)
  .attr("fill", d => color(+d.Value))
  .attr("stroke", "#333333");
svg.selectAll("text.region-label").data(data).join("text")
  .attr("class", "region-label")
  .attr("x", (d, i) => (i % cols) * (tile + 4) + 14)
  .attr("y", (d, i) => Math.floor(i / cols) * (tile + 4) + 24)
  .text(d => d.Region);
